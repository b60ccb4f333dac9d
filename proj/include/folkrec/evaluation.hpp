#pragma once

#include <span>
#include <string>
#include <vector>

#include "folkrec/corpus.hpp"
#include "folkrec/recommendation.hpp"

namespace folkrec {

/// Largest cutoff k; MRR and MAP are always taken over this many tags.
inline constexpr std::size_t kMaxCutoff = 10;

/// A held-out bookmark. `timestamp` is the reference time for temporal
/// recommenders.
struct TestCase {
  std::string user;
  std::string resource;
  std::vector<std::string> true_tags;
  Timestamp timestamp = 0;

  friend bool operator==(const TestCase&, const TestCase&) = default;
};

struct SplitPair {
  Folksonomy train;
  std::vector<TestCase> test;  // ordered by user
};

struct SplitOptions {
  /// When set, a user's only post is held out too (leaving no history).
  bool include_single_post_users = false;
};

/// Holds out each user's latest post; equal timestamps go to the
/// lexicographically larger resource.
SplitPair leave_one_out_split(const Folksonomy& f, const SplitOptions& options = {});

// Per-post metrics. `recommended` must not repeat a tag; `true_tags` must be
// non-empty.

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Throws std::invalid_argument unless 1 <= k <= kMaxCutoff.
PrecisionRecall precision_recall_f1(std::span<const std::string> recommended,
                                    std::span<const std::string> true_tags, std::size_t k);

/// Mean over the true tags of 1/rank, counting only ranks within the cutoff.
double reciprocal_rank(std::span<const std::string> recommended,
                       std::span<const std::string> true_tags, std::size_t cutoff = kMaxCutoff);

/// (1/|true|) times the sum of P@i over hit ranks i within the cutoff.
double average_precision(std::span<const std::string> recommended,
                         std::span<const std::string> true_tags, std::size_t cutoff = kMaxCutoff);

struct CutoffMetrics {
  std::size_t k = 0;
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;

  friend bool operator==(const CutoffMetrics&, const CutoffMetrics&) = default;
};

struct EvalReport {
  std::string algorithm;
  std::vector<CutoffMetrics> at_k;  // k = 1..kMaxCutoff
  double mrr = 0.0;
  double map = 0.0;
  std::size_t posts = 0;
  double wall_seconds = 0.0;

  const CutoffMetrics& at(std::size_t k) const { return at_k.at(k - 1); }
  /// Compares every metric, ignoring wall time.
  bool same_metrics(const EvalReport& other) const;
};

struct EvalOptions {
  unsigned threads = 1;
};

/// Runs the recommender on every test case and macro-averages. P@k and R@k
/// are means over posts, F1@k is the harmonic mean of those two means.
/// Sums are accumulated exactly, so the result does not depend on test
/// case order or thread count. Throws DataError on an empty test set.
EvalReport evaluate(const Recommender& recommender, std::span<const TestCase> test,
                    const EvalOptions& options = {});

}  // namespace folkrec

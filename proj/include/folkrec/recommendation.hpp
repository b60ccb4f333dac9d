#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folkrec/index.hpp"

namespace folkrec {

struct ScoredTag {
  std::string tag;
  double score;

  friend bool operator==(const ScoredTag&, const ScoredTag&) = default;
};

/// Ranked tags: scores non-increasing, ties by ascending tag name, no
/// duplicates, at most k entries.
using Recommendation = std::vector<ScoredTag>;

/// Candidate tag scores keyed by tag id.
using TagScores = std::vector<std::pair<TagId, double>>;

/// Orders candidates by (score desc, tag id asc) and keeps the first k.
/// Candidates must not repeat a tag.
Recommendation top_k(const TrainingIndex& index, TagScores scores, std::size_t k);

std::vector<std::string> tag_names(const Recommendation& rec);

/// What a recommender is asked for: tags for `user` annotating `resource`
/// at time `ref_time`. Either entity may be unknown to the training data.
struct Query {
  std::string user;
  std::string resource;
  Timestamp ref_time = 0;
};

/// A recommender bound to one frozen training index. Implementations are
/// immutable after construction and safe to call concurrently.
class Recommender {
 public:
  virtual ~Recommender() = default;
  virtual std::string_view name() const = 0;
  virtual Recommendation recommend(const Query& query, std::size_t k) const = 0;
};

}  // namespace folkrec

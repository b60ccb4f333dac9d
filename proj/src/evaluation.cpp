#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

#include "folkrec/evaluation.hpp"
#include "folkrec/parallel.hpp"

namespace folkrec {

namespace {

using Rational = boost::multiprecision::cpp_rational;

// lcm(1..10): every 1/rank with rank <= kMaxCutoff is an integer multiple
// of 1/kRankScale, which lets per-post sums be kept as integers.
constexpr std::uint64_t kRankScale = 2520;
static_assert(kMaxCutoff <= 10, "kRankScale must be divisible by every rank");

struct PostTally {
  std::array<std::uint64_t, kMaxCutoff + 1> hits_at{};  // hits within top k
  std::uint64_t truth = 0;
  std::uint64_t rr_scaled = 0;  // kRankScale * sum of 1/rank over hits
  std::uint64_t ap_scaled = 0;  // kRankScale * sum of P@rank over hits
};

struct TruthBucket {
  std::array<std::uint64_t, kMaxCutoff + 1> hits_at{};
  std::uint64_t rr_scaled = 0;
  std::uint64_t ap_scaled = 0;
};

PostTally tally(const Recommendation& rec, const std::vector<std::string>& truth) {
  PostTally t;
  t.truth = truth.size();
  std::uint64_t hits = 0;
  for (std::size_t rank = 1; rank <= kMaxCutoff; ++rank) {
    if (rank <= rec.size() &&
        std::find(truth.begin(), truth.end(), rec[rank - 1].tag) != truth.end()) {
      ++hits;
      t.rr_scaled += kRankScale / rank;
      t.ap_scaled += hits * (kRankScale / rank);
    }
    t.hits_at[rank] = hits;
  }
  return t;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

SplitPair leave_one_out_split(const Folksonomy& f, const SplitOptions& options) {
  SplitPair out;
  std::vector<Post> train;
  train.reserve(f.size());
  const auto& posts = f.posts();
  for (std::size_t begin = 0; begin < posts.size();) {
    std::size_t end = begin;
    while (end < posts.size() && posts[end].user == posts[begin].user) ++end;
    std::size_t held = end;
    if (end - begin >= 2 || options.include_single_post_users) {
      held = begin;
      for (std::size_t i = begin + 1; i < end; ++i)
        if (std::tie(posts[i].timestamp, posts[i].resource) >
            std::tie(posts[held].timestamp, posts[held].resource))
          held = i;
      out.test.push_back(
          {posts[held].user, posts[held].resource, posts[held].tags, posts[held].timestamp});
    }
    for (std::size_t i = begin; i < end; ++i)
      if (i != held) train.push_back(posts[i]);
    begin = end;
  }
  out.train = Folksonomy(std::move(train));
  return out;
}

bool EvalReport::same_metrics(const EvalReport& other) const {
  return at_k == other.at_k && mrr == other.mrr && map == other.map && posts == other.posts;
}

EvalReport evaluate(const Recommender& recommender, std::span<const TestCase> test,
                    const EvalOptions& options) {
  if (test.empty()) throw DataError("empty test set");
  const auto started = std::chrono::steady_clock::now();

  std::vector<PostTally> tallies(test.size());
  parallel_for(test.size(), options.threads, [&](std::size_t i) {
    const auto& tc = test[i];
    if (tc.true_tags.empty()) throw DataError("test case without tags for user " + tc.user);
    auto rec = recommender.recommend({tc.user, tc.resource, tc.timestamp}, kMaxCutoff);
    tallies[i] = tally(rec, tc.true_tags);
  });

  // Integer accumulation keeps the reduction exact and order free.
  std::array<std::uint64_t, kMaxCutoff + 1> hits_at{};
  std::map<std::uint64_t, TruthBucket> by_truth;
  for (const auto& t : tallies) {
    auto& bucket = by_truth[t.truth];
    for (std::size_t k = 1; k <= kMaxCutoff; ++k) {
      hits_at[k] += t.hits_at[k];
      bucket.hits_at[k] += t.hits_at[k];
    }
    bucket.rr_scaled += t.rr_scaled;
    bucket.ap_scaled += t.ap_scaled;
  }

  const Rational n_posts(static_cast<std::uint64_t>(test.size()));
  EvalReport report;
  report.algorithm = std::string(recommender.name());
  report.posts = test.size();
  for (std::size_t k = 1; k <= kMaxCutoff; ++k) {
    Rational precision = Rational(hits_at[k]) / (Rational(k) * n_posts);
    Rational recall = 0;
    for (const auto& [truth, bucket] : by_truth) recall += Rational(bucket.hits_at[k]) / truth;
    recall /= n_posts;
    Rational f1 = 0;
    if (precision + recall > 0) f1 = 2 * precision * recall / (precision + recall);
    report.at_k.push_back({k, to_double(recall), to_double(precision), to_double(f1)});
  }
  Rational rr = 0, ap = 0;
  for (const auto& [truth, bucket] : by_truth) {
    rr += Rational(bucket.rr_scaled) / (Rational(kRankScale) * truth);
    ap += Rational(bucket.ap_scaled) / (Rational(kRankScale) * truth);
  }
  report.mrr = to_double(rr / n_posts);
  report.map = to_double(ap / n_posts);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace folkrec

#include "folkrec/rec_frequency.hpp"

#include <algorithm>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "folkrec/scoring.hpp"

namespace folkrec {

TagScores user_counts(const TrainingIndex& index, UserId user) {
  TagScores out;
  for (const auto& usage : index.user_profile(user))
    out.emplace_back(usage.tag, static_cast<double>(usage.times.size()));
  return out;
}

TagScores resource_counts(const TrainingIndex& index, ResourceId resource) {
  TagScores out;
  for (const auto& [tag, count] : index.resource_profile(resource))
    out.emplace_back(tag, static_cast<double>(count));
  return out;
}

Recommendation mp(const TrainingIndex& index, std::size_t k) {
  TagScores scores;
  scores.reserve(index.tag_count());
  for (TagId t = 0; t < index.tag_count(); ++t)
    scores.emplace_back(t, static_cast<double>(index.global_count(t)));
  return top_k(index, std::move(scores), k);
}

Recommendation mp_u(const TrainingIndex& index, std::string_view user, std::size_t k) {
  auto u = index.find_user(user);
  if (!u) return {};
  return top_k(index, user_counts(index, *u), k);
}

Recommendation mp_r(const TrainingIndex& index, std::string_view resource, std::size_t k) {
  auto r = index.find_resource(resource);
  if (!r) return {};
  return top_k(index, resource_counts(index, *r), k);
}

Recommendation mp_ur(const TrainingIndex& index, std::string_view user,
                     std::string_view resource, std::size_t k, double mix) {
  TagScores by_user, by_resource;
  if (auto u = index.find_user(user)) by_user = softmax_normalize(user_counts(index, *u));
  if (auto r = index.find_resource(resource))
    by_resource = softmax_normalize(resource_counts(index, *r));
  return top_k(index, blend(by_user, by_resource, mix), k);
}

Recommendation cf(const TrainingIndex& index, std::string_view user, std::size_t k,
                  std::size_t neighbors) {
  auto u = index.find_user(user);
  if (!u || neighbors == 0) return {};

  std::unordered_map<UserId, std::uint64_t> dot;
  for (const auto& usage : index.user_profile(*u)) {
    const std::uint64_t mine = usage.times.size();
    for (const auto& [v, count] : index.tag_users(usage.tag))
      if (v != *u) dot[v] += mine * count;
  }
  struct Candidate {
    UserId user;
    std::uint64_t dot;
  };
  std::vector<Candidate> similar;
  similar.reserve(dot.size());
  for (const auto& [v, d] : dot)
    if (d > 0) similar.push_back({v, d});
  // Exact cosine order: d_a / |a| > d_b / |b|  <=>  d_a^2 |b|^2 > d_b^2 |a|^2.
  auto more_similar = [&](const Candidate& a, const Candidate& b) {
    using boost::multiprecision::uint256_t;
    const uint256_t lhs = uint256_t(a.dot) * a.dot * index.user_sq_norm(b.user);
    const uint256_t rhs = uint256_t(b.dot) * b.dot * index.user_sq_norm(a.user);
    return lhs > rhs || (lhs == rhs && a.user < b.user);
  };
  const auto keep = std::min(neighbors, similar.size());
  std::partial_sort(similar.begin(), similar.begin() + static_cast<std::ptrdiff_t>(keep),
                    similar.end(), more_similar);
  similar.resize(keep);

  const double norm_u = index.user_norm(*u);
  std::vector<double> score(index.tag_count(), 0.0);
  std::vector<TagId> touched;
  for (const auto& [v, d] : similar) {
    const double sim = static_cast<double>(d) / (norm_u * index.user_norm(v));
    for (const auto& usage : index.user_profile(v)) {
      if (score[usage.tag] == 0.0) touched.push_back(usage.tag);
      score[usage.tag] += sim * static_cast<double>(usage.times.size());
    }
  }
  TagScores candidates;
  candidates.reserve(touched.size());
  for (auto t : touched) candidates.emplace_back(t, score[t]);
  return top_k(index, std::move(candidates), k);
}

}  // namespace folkrec

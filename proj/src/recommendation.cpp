#include "folkrec/recommendation.hpp"

#include <algorithm>

namespace folkrec {

Recommendation top_k(const TrainingIndex& index, TagScores scores, std::size_t k) {
  auto better = [](const auto& a, const auto& b) {
    return a.second > b.second || (a.second == b.second && a.first < b.first);
  };
  const auto keep = std::min(k, scores.size());
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(keep),
                    scores.end(), better);
  Recommendation out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i)
    out.push_back({index.tag_name(scores[i].first), scores[i].second});
  return out;
}

std::vector<std::string> tag_names(const Recommendation& rec) {
  std::vector<std::string> out;
  out.reserve(rec.size());
  for (const auto& s : rec) out.push_back(s.tag);
  return out;
}

}  // namespace folkrec

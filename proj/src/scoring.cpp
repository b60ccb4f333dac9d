#include "folkrec/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace folkrec {

std::vector<double> softmax(std::span<const double> scores) {
  std::vector<double> out(scores.size());
  if (scores.empty()) return out;
  const double peak = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    out[i] = std::exp(scores[i] - peak);
    total += out[i];
  }
  for (auto& v : out) v /= total;
  return out;
}

std::map<std::string, double> softmax_normalize(const std::map<std::string, double>& scores) {
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& [tag, s] : scores) values.push_back(s);
  auto normalized = softmax(values);
  std::map<std::string, double> out;
  std::size_t i = 0;
  for (const auto& [tag, s] : scores) out.emplace(tag, normalized[i++]);
  return out;
}

TagScores softmax_normalize(TagScores scores) {
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& [tag, s] : scores) values.push_back(s);
  auto normalized = softmax(values);
  for (std::size_t i = 0; i < scores.size(); ++i) scores[i].second = normalized[i];
  return scores;
}

TagScores blend(const TagScores& user_part, const TagScores& resource_part, double beta) {
  TagScores out;
  const bool use_user = beta > 0.0;
  const bool use_resource = beta < 1.0;
  auto u = user_part.begin();
  auto r = resource_part.begin();
  while ((use_user && u != user_part.end()) || (use_resource && r != resource_part.end())) {
    const bool take_u = use_user && u != user_part.end();
    const bool take_r = use_resource && r != resource_part.end();
    if (take_u && (!take_r || u->first < r->first)) {
      out.emplace_back(u->first, beta * u->second);
      ++u;
    } else if (take_r && (!take_u || r->first < u->first)) {
      out.emplace_back(r->first, (1.0 - beta) * r->second);
      ++r;
    } else {
      out.emplace_back(u->first, beta * u->second + (1.0 - beta) * r->second);
      ++u;
      ++r;
    }
  }
  return out;
}

}  // namespace folkrec

#include <algorithm>
#include <stdexcept>

#include "folkrec/evaluation.hpp"

namespace folkrec {

namespace {

bool relevant(std::span<const std::string> true_tags, const std::string& tag) {
  return std::find(true_tags.begin(), true_tags.end(), tag) != true_tags.end();
}

}  // namespace

PrecisionRecall precision_recall_f1(std::span<const std::string> recommended,
                                    std::span<const std::string> true_tags, std::size_t k) {
  if (k < 1 || k > kMaxCutoff)
    throw std::invalid_argument("cutoff k must lie in 1.." + std::to_string(kMaxCutoff));
  const auto depth = std::min(k, recommended.size());
  const auto hits = std::count_if(recommended.begin(), recommended.begin() + depth,
                                  [&](const std::string& t) { return relevant(true_tags, t); });
  PrecisionRecall out;
  out.precision = static_cast<double>(hits) / static_cast<double>(k);
  out.recall = static_cast<double>(hits) / static_cast<double>(true_tags.size());
  if (out.precision + out.recall > 0.0)
    out.f1 = 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

double reciprocal_rank(std::span<const std::string> recommended,
                       std::span<const std::string> true_tags, std::size_t cutoff) {
  double sum = 0.0;
  const auto depth = std::min(cutoff, recommended.size());
  for (std::size_t i = 0; i < depth; ++i)
    if (relevant(true_tags, recommended[i])) sum += 1.0 / static_cast<double>(i + 1);
  return sum / static_cast<double>(true_tags.size());
}

double average_precision(std::span<const std::string> recommended,
                         std::span<const std::string> true_tags, std::size_t cutoff) {
  double sum = 0.0;
  std::size_t hits = 0;
  const auto depth = std::min(cutoff, recommended.size());
  for (std::size_t i = 0; i < depth; ++i) {
    if (relevant(true_tags, recommended[i])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(true_tags.size());
}

}  // namespace folkrec

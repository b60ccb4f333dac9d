#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "folkrec/recommendation.hpp"

namespace folkrec {

/// exp(s_i) / sum_j exp(s_j), evaluated after subtracting the maximum so
/// that large magnitudes neither overflow nor lose the largest entry.
/// Empty input gives empty output.
std::vector<double> softmax(std::span<const double> scores);

std::map<std::string, double> softmax_normalize(const std::map<std::string, double>& scores);

/// Softmax over the score column of tag-keyed candidates.
TagScores softmax_normalize(TagScores scores);

/// beta * user_part + (1 - beta) * resource_part over the union of tags.
/// Both parts are sorted by tag id. A part with zero weight contributes no
/// candidates, so beta = 1 reproduces the user ranking exactly and beta = 0
/// the resource ranking.
TagScores blend(const TagScores& user_part, const TagScores& resource_part, double beta);

}  // namespace folkrec

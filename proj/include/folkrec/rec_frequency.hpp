#pragma once

#include <string_view>

#include "folkrec/recommendation.hpp"

namespace folkrec {

/// Most popular tags over all assignments (same list for every query).
Recommendation mp(const TrainingIndex& index, std::size_t k);

/// Most frequent tags in the user's assignments; unknown user gives [].
Recommendation mp_u(const TrainingIndex& index, std::string_view user, std::size_t k);

/// Most frequent tags on the resource; unseen resource gives [].
Recommendation mp_r(const TrainingIndex& index, std::string_view resource, std::size_t k);

/// mix * softmax(user counts) + (1 - mix) * softmax(resource counts).
Recommendation mp_ur(const TrainingIndex& index, std::string_view user,
                     std::string_view resource, std::size_t k, double mix = 0.5);

/// User-based collaborative filtering. Neighbors are the `neighbors` users
/// with the highest positive cosine similarity between tag-frequency
/// vectors (ties by user name); a tag scores the similarity-weighted sum
/// of its counts across the neighbors' whole profiles.
Recommendation cf(const TrainingIndex& index, std::string_view user, std::size_t k,
                  std::size_t neighbors = 20);

// Building blocks shared with the temporal recommenders.
TagScores user_counts(const TrainingIndex& index, UserId user);
TagScores resource_counts(const TrainingIndex& index, ResourceId resource);

}  // namespace folkrec

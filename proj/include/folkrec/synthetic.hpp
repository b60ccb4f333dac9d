#pragma once

#include <cstdint>

#include "folkrec/corpus.hpp"

namespace folkrec {

/// Knobs of the synthetic tagging process. Each user writes a time-ordered
/// sequence of posts on resources drawn from a Zipf popularity law. Every
/// tag slot either reuses one of the user's own earlier tags (probability
/// reuse_bias) or picks a tag the user has never applied; new tags imitate
/// the tags already on the resource and its topic tags.
struct SynthParams {
  std::size_t users = 50;
  std::size_t base_tags = 200;  // shared vocabulary size
  double reuse_bias = 0.9;
  /// Mixes the choice among earlier tags: 0 picks proportionally to past
  /// frequency, 1 proportionally to 1 / recency rank (1 = most recent).
  double recency_bias = 0.5;
  /// Chance that a reuse slot is cued by the resource: only earlier tags
  /// already on the resource or among its topic tags qualify, and when none
  /// does the slot takes a new tag from the resource instead.
  double context_bias = 0.5;
  std::uint64_t seed = 1;

  std::size_t min_posts = 20;
  std::size_t max_posts = 60;
  std::size_t min_tags = 1;
  std::size_t max_tags = 4;
  std::size_t resources = 0;    // 0 means 3 * users
  std::size_t topic_tags = 4;   // topic tags per resource

  void validate() const;
};

/// Deterministic for a given parameter set.
Folksonomy generate_synthetic(const SynthParams& params);

}  // namespace folkrec

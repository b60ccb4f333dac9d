#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "folkrec/rec_graph.hpp"
#include "folkrec/rec_temporal.hpp"
#include "folkrec/recommendation.hpp"

namespace folkrec {

struct AlgorithmParams {
  DecayParams decay;
  double mix = 0.5;          // mp_ur user weight
  std::size_t neighbors = 20;  // cf neighborhood size
  RankParams rank;

  void validate() const;
};

/// Registered algorithm names in reporting order.
const std::vector<std::string>& algorithm_names();
bool is_known_algorithm(std::string_view name);

/// Binds the named algorithm to `index`, which must outlive the result.
/// Throws UsageError("unknown algorithm ...") for unregistered names.
std::unique_ptr<Recommender> make_recommender(std::string_view name, const TrainingIndex& index,
                                              const AlgorithmParams& params = {});

}  // namespace folkrec

#pragma once

#include <optional>
#include <string_view>

#include "folkrec/recommendation.hpp"

namespace folkrec {

struct DecayParams {
  /// Power-law decay exponent of the base-level activation.
  double d = 0.5;
  /// Recencies below this many seconds are clamped to it, which keeps a
  /// usage at exactly ref_time finite.
  double min_recency = 1.0;
  /// Weight of the user component in the hybrid recommenders.
  double beta = 0.5;
  /// Exponential decay rate (per second) of the GIRP reconstruction.
  double lambda = 1.0 / 86400.0;

  /// Throws UsageError when a field is out of range.
  void validate() const;
};

/// Base-level activation of `tag` for `user`:
///   ln( sum_i max(ref_time - t_i, min_recency)^(-d) )
/// over every training usage t_i. Empty when the user never used the tag.
std::optional<double> bla(const TrainingIndex& index, std::string_view user,
                          std::string_view tag, Timestamp ref_time,
                          const DecayParams& params = {});

/// Candidates are the user's tags, scored by softmax-normalized BLA.
Recommendation bll_recommend(const TrainingIndex& index, std::string_view user,
                             Timestamp ref_time, std::size_t k, const DecayParams& params = {});

/// beta * ||BLA(t,u)|| + (1 - beta) * ||count(t,r)||, both softmax-normalized.
Recommendation bll_c_recommend(const TrainingIndex& index, std::string_view user,
                               std::string_view resource, Timestamp ref_time, std::size_t k,
                               const DecayParams& params = {});

/// Raw GIRP score n * (exp(-lambda * dt_last) + exp(-lambda * dt_first)) / 2,
/// with clamped recencies of the last and first usage.
std::optional<double> girp_raw(const TrainingIndex& index, std::string_view user,
                               std::string_view tag, Timestamp ref_time,
                               const DecayParams& params = {});

Recommendation girp_recommend(const TrainingIndex& index, std::string_view user,
                              Timestamp ref_time, std::size_t k, const DecayParams& params = {});

/// GIRP with the resource component mixed in as in BLL+C.
Recommendation girptm_recommend(const TrainingIndex& index, std::string_view user,
                                std::string_view resource, Timestamp ref_time, std::size_t k,
                                const DecayParams& params = {});

// Unnormalized scores over the user's tags, ascending tag id.
TagScores bla_scores(const TrainingIndex& index, UserId user, Timestamp ref_time,
                     const DecayParams& params);
TagScores girp_scores(const TrainingIndex& index, UserId user, Timestamp ref_time,
                      const DecayParams& params);

}  // namespace folkrec

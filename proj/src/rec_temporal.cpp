#include "folkrec/rec_temporal.hpp"

#include <cmath>

#include "folkrec/rec_frequency.hpp"
#include "folkrec/scoring.hpp"

namespace folkrec {

namespace {

double recency(Timestamp ref_time, Timestamp t, const DecayParams& params) {
  return std::max(static_cast<double>(ref_time - t), params.min_recency);
}

double activation(std::span<const Timestamp> times, Timestamp ref_time, const DecayParams& params) {
  double sum = 0.0;
  for (auto t : times) sum += std::pow(recency(ref_time, t, params), -params.d);
  return std::log(sum);
}

double girp_value(std::span<const Timestamp> times, Timestamp ref_time, const DecayParams& params) {
  // times ascend, so front() is the first and back() the last usage.
  const double last = std::exp(-params.lambda * recency(ref_time, times.back(), params));
  const double first = std::exp(-params.lambda * recency(ref_time, times.front(), params));
  return static_cast<double>(times.size()) * (last + first) / 2.0;
}

TagScores normalized_resource_part(const TrainingIndex& index, std::string_view resource) {
  if (auto r = index.find_resource(resource))
    return softmax_normalize(resource_counts(index, *r));
  return {};
}

}  // namespace

void DecayParams::validate() const {
  if (!(d >= 0.0)) throw UsageError("decay exponent d must be >= 0");
  if (!(min_recency >= 1.0)) throw UsageError("min_recency must be >= 1 second");
  if (!(beta >= 0.0 && beta <= 1.0)) throw UsageError("beta must lie in [0, 1]");
  if (!(lambda > 0.0)) throw UsageError("lambda must be > 0");
}

TagScores bla_scores(const TrainingIndex& index, UserId user, Timestamp ref_time,
                     const DecayParams& params) {
  TagScores out;
  for (const auto& usage : index.user_profile(user))
    out.emplace_back(usage.tag, activation(usage.times, ref_time, params));
  return out;
}

TagScores girp_scores(const TrainingIndex& index, UserId user, Timestamp ref_time,
                      const DecayParams& params) {
  TagScores out;
  for (const auto& usage : index.user_profile(user))
    out.emplace_back(usage.tag, girp_value(usage.times, ref_time, params));
  return out;
}

std::optional<double> bla(const TrainingIndex& index, std::string_view user,
                          std::string_view tag, Timestamp ref_time, const DecayParams& params) {
  auto u = index.find_user(user);
  auto t = index.find_tag(tag);
  if (!u || !t) return std::nullopt;
  auto times = index.usage_times(*u, *t);
  if (times.empty()) return std::nullopt;
  return activation(times, ref_time, params);
}

std::optional<double> girp_raw(const TrainingIndex& index, std::string_view user,
                               std::string_view tag, Timestamp ref_time,
                               const DecayParams& params) {
  auto u = index.find_user(user);
  auto t = index.find_tag(tag);
  if (!u || !t) return std::nullopt;
  auto times = index.usage_times(*u, *t);
  if (times.empty()) return std::nullopt;
  return girp_value(times, ref_time, params);
}

Recommendation bll_recommend(const TrainingIndex& index, std::string_view user,
                             Timestamp ref_time, std::size_t k, const DecayParams& params) {
  auto u = index.find_user(user);
  if (!u) return {};
  return top_k(index, softmax_normalize(bla_scores(index, *u, ref_time, params)), k);
}

Recommendation bll_c_recommend(const TrainingIndex& index, std::string_view user,
                               std::string_view resource, Timestamp ref_time, std::size_t k,
                               const DecayParams& params) {
  TagScores by_user;
  if (auto u = index.find_user(user))
    by_user = softmax_normalize(bla_scores(index, *u, ref_time, params));
  return top_k(index, blend(by_user, normalized_resource_part(index, resource), params.beta), k);
}

Recommendation girp_recommend(const TrainingIndex& index, std::string_view user,
                              Timestamp ref_time, std::size_t k, const DecayParams& params) {
  auto u = index.find_user(user);
  if (!u) return {};
  return top_k(index, softmax_normalize(girp_scores(index, *u, ref_time, params)), k);
}

Recommendation girptm_recommend(const TrainingIndex& index, std::string_view user,
                                std::string_view resource, Timestamp ref_time, std::size_t k,
                                const DecayParams& params) {
  TagScores by_user;
  if (auto u = index.find_user(user))
    by_user = softmax_normalize(girp_scores(index, *u, ref_time, params));
  return top_k(index, blend(by_user, normalized_resource_part(index, resource), params.beta), k);
}

}  // namespace folkrec

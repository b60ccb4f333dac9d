#include "folkrec/registry.hpp"

#include <algorithm>
#include <functional>

#include "folkrec/rec_frequency.hpp"

namespace folkrec {

namespace {

using Scorer = std::function<Recommendation(const Query&, std::size_t)>;

class FunctionRecommender final : public Recommender {
 public:
  FunctionRecommender(std::string name, Scorer scorer)
      : name_(std::move(name)), scorer_(std::move(scorer)) {}
  std::string_view name() const override { return name_; }
  Recommendation recommend(const Query& q, std::size_t k) const override { return scorer_(q, k); }

 private:
  std::string name_;
  Scorer scorer_;
};

class GraphRecommender final : public Recommender {
 public:
  GraphRecommender(std::string name, const TrainingIndex& index, const RankParams& params,
                   bool differential)
      : name_(std::move(name)), ranker_(index, params), differential_(differential) {}
  std::string_view name() const override { return name_; }
  Recommendation recommend(const Query& q, std::size_t k) const override {
    return differential_ ? ranker_.folkrank(q.user, q.resource, k)
                         : ranker_.apr(q.user, q.resource, k);
  }

 private:
  std::string name_;
  GraphRanker ranker_;
  bool differential_;
};

}  // namespace

void AlgorithmParams::validate() const {
  decay.validate();
  rank.validate();
  if (!(mix >= 0.0 && mix <= 1.0)) throw UsageError("mix must lie in [0, 1]");
  if (neighbors < 1) throw UsageError("neighbors must be >= 1");
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names = {"mp",  "mp_u", "mp_r",  "mp_ur", "cf",     "apr",
                                                 "fr",  "girp", "girptm", "bll",  "bll_c"};
  return names;
}

bool is_known_algorithm(std::string_view name) {
  const auto& names = algorithm_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::unique_ptr<Recommender> make_recommender(std::string_view name, const TrainingIndex& index,
                                              const AlgorithmParams& params) {
  if (!is_known_algorithm(name)) throw UsageError("unknown algorithm '" + std::string(name) + "'");
  params.validate();
  const TrainingIndex* ix = &index;
  const std::string id(name);
  auto make = [&](Scorer s) { return std::make_unique<FunctionRecommender>(id, std::move(s)); };

  if (name == "apr" || name == "fr")
    return std::make_unique<GraphRecommender>(id, index, params.rank, name == "fr");
  if (name == "mp") return make([ix](const Query&, std::size_t k) { return mp(*ix, k); });
  if (name == "mp_u")
    return make([ix](const Query& q, std::size_t k) { return mp_u(*ix, q.user, k); });
  if (name == "mp_r")
    return make([ix](const Query& q, std::size_t k) { return mp_r(*ix, q.resource, k); });
  if (name == "mp_ur")
    return make([ix, mix = params.mix](const Query& q, std::size_t k) {
      return mp_ur(*ix, q.user, q.resource, k, mix);
    });
  if (name == "cf")
    return make([ix, n = params.neighbors](const Query& q, std::size_t k) {
      return cf(*ix, q.user, k, n);
    });
  const DecayParams decay = params.decay;
  if (name == "bll")
    return make([ix, decay](const Query& q, std::size_t k) {
      return bll_recommend(*ix, q.user, q.ref_time, k, decay);
    });
  if (name == "bll_c")
    return make([ix, decay](const Query& q, std::size_t k) {
      return bll_c_recommend(*ix, q.user, q.resource, q.ref_time, k, decay);
    });
  if (name == "girp")
    return make([ix, decay](const Query& q, std::size_t k) {
      return girp_recommend(*ix, q.user, q.ref_time, k, decay);
    });
  return make([ix, decay](const Query& q, std::size_t k) {
    return girptm_recommend(*ix, q.user, q.resource, q.ref_time, k, decay);
  });
}

}  // namespace folkrec

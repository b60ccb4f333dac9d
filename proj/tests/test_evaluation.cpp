#include <doctest.h>

#include <algorithm>
#include <map>

#include "folkrec/evaluation.hpp"
#include "folkrec/index.hpp"
#include "folkrec/registry.hpp"
#include "folkrec/synthetic.hpp"
#include "support.hpp"

using namespace folkrec;
using Tags = std::vector<std::string>;

namespace {

/// Returns a canned list per user.
class CannedRecommender : public Recommender {
 public:
  explicit CannedRecommender(std::map<std::string, Tags> lists) : lists_(std::move(lists)) {}
  std::string_view name() const override { return "canned"; }
  Recommendation recommend(const Query& q, std::size_t k) const override {
    Recommendation out;
    auto it = lists_.find(q.user);
    if (it == lists_.end()) return out;
    for (std::size_t i = 0; i < std::min(k, it->second.size()); ++i)
      out.push_back({it->second[i], 1.0 / double(i + 1)});
    return out;
  }

 private:
  std::map<std::string, Tags> lists_;
};

void check_matches(const EvalReport& got, const testing::ExactMetrics& want) {
  for (std::size_t k = 1; k <= kMaxCutoff; ++k) {
    CHECK(got.at(k).precision == testing::as_double(want.precision[k - 1]));
    CHECK(got.at(k).recall == testing::as_double(want.recall[k - 1]));
    CHECK(got.at(k).f1 == testing::as_double(want.f1[k - 1]));
  }
  CHECK(got.mrr == testing::as_double(want.mrr));
  CHECK(got.map == testing::as_double(want.map));
}

}  // namespace

TEST_CASE("split holds out the latest post") {
  Folksonomy f({{"u1", "r1", {"a"}, 100}, {"u1", "r2", {"b"}, 200}});
  auto split = leave_one_out_split(f);
  REQUIRE(split.test.size() == 1);
  CHECK(split.test[0].resource == "r2");
  CHECK(split.test[0].timestamp == 200);
  CHECK(split.test[0].true_tags == Tags{"b"});
  REQUIRE(split.train.size() == 1);
  CHECK(split.train.posts()[0].resource == "r1");
}

TEST_CASE("single-post users stay in training by default") {
  Folksonomy f({{"u1", "r1", {"a"}, 100}, {"u2", "r1", {"a"}, 50}, {"u2", "r2", {"b"}, 60}});
  auto split = leave_one_out_split(f);
  REQUIRE(split.test.size() == 1);
  CHECK(split.test[0].user == "u2");
  CHECK(split.train.size() == 2);

  auto all = leave_one_out_split(f, {.include_single_post_users = true});
  CHECK(all.test.size() == 2);
  CHECK(all.train.size() == 1);
}

TEST_CASE("timestamp ties go to the larger resource id") {
  Folksonomy f({{"u1", "r_a", {"a"}, 200}, {"u1", "r_b", {"b"}, 200}, {"u1", "r_0", {"c"}, 10}});
  auto split = leave_one_out_split(f);
  REQUIRE(split.test.size() == 1);
  CHECK(split.test[0].resource == "r_b");
}

TEST_CASE("a single test post reproduces the per-post metrics") {
  CannedRecommender rec({{"u", {"a", "b", "c", "d", "e"}}});
  std::vector<TestCase> test{{"u", "r", {"a", "c"}, 0}};
  auto report = evaluate(rec, test);
  auto single = precision_recall_f1(Tags{"a", "b", "c", "d", "e"}, Tags{"a", "c"}, 5);
  CHECK(report.at(5).precision == doctest::Approx(single.precision));
  CHECK(report.at(5).recall == doctest::Approx(single.recall));
  CHECK(report.at(5).f1 == doctest::Approx(single.f1));
  CHECK(report.posts == 1);
  CHECK(report.algorithm == "canned");
}

TEST_CASE("MRR is the mean of per-post reciprocal ranks") {
  CannedRecommender rec({{"u1", {"a"}}, {"u2", {"x", "a"}}});
  std::vector<TestCase> test{{"u1", "r", {"a"}, 0}, {"u2", "r", {"a"}, 0}};
  CHECK(evaluate(rec, test).mrr == doctest::Approx(0.75));
}

TEST_CASE("empty test set is an error") {
  CannedRecommender rec({});
  CHECK_THROWS_AS(evaluate(rec, std::vector<TestCase>{}), DataError);
}

TEST_CASE("evaluate equals the exact reference evaluator") {
  SynthParams params;
  params.users = 10;
  params.min_posts = 2;
  params.max_posts = 4;
  params.seed = 3;
  auto split = leave_one_out_split(generate_synthetic(params));
  REQUIRE(split.test.size() >= 10);
  auto index = build_index(split.train);
  for (const auto& name : {"mp_u", "bll_c", "cf"}) {
    auto rec = make_recommender(name, index);
    std::vector<Tags> ranked, truths;
    for (const auto& tc : split.test) {
      ranked.push_back(tag_names(rec->recommend({tc.user, tc.resource, tc.timestamp}, kMaxCutoff)));
      truths.push_back(tc.true_tags);
    }
    check_matches(evaluate(*rec, split.test), testing::naive_evaluate(ranked, truths));
  }
}

TEST_CASE("report does not depend on order or thread count") {
  SynthParams params;
  params.users = 40;
  params.seed = 9;
  auto split = leave_one_out_split(generate_synthetic(params));
  auto index = build_index(split.train);
  auto rec = make_recommender("bll", index);
  auto base = evaluate(*rec, split.test);
  auto reversed = split.test;
  std::reverse(reversed.begin(), reversed.end());
  CHECK(evaluate(*rec, reversed).same_metrics(base));
  CHECK(evaluate(*rec, split.test, {.threads = 4}).same_metrics(base));
  CHECK(evaluate(*rec, split.test, {.threads = 64}).same_metrics(base));
}

#include <doctest.h>

#include <stdexcept>

#include "folkrec/evaluation.hpp"

using namespace folkrec;
using Tags = std::vector<std::string>;

TEST_CASE("precision, recall and F1 at k") {
  const Tags rec{"a", "b", "c", "d", "e"};
  auto m = precision_recall_f1(rec, Tags{"a", "c"}, 5);
  CHECK(m.precision == doctest::Approx(0.4));
  CHECK(m.recall == doctest::Approx(1.0));
  CHECK(m.f1 == doctest::Approx(4.0 / 7.0));

  auto none = precision_recall_f1(rec, Tags{"x", "y"}, 5);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f1 == 0.0);

  auto one = precision_recall_f1(Tags{"a"}, Tags{"a"}, 1);
  CHECK(one.precision == 1.0);
  CHECK(one.recall == 1.0);
  CHECK(one.f1 == 1.0);
}

TEST_CASE("precision divides by k even for short lists") {
  auto m = precision_recall_f1(Tags{"a"}, Tags{"a", "b"}, 4);
  CHECK(m.precision == doctest::Approx(0.25));
  CHECK(m.recall == doctest::Approx(0.5));
}

TEST_CASE("k outside 1..10 is rejected") {
  const Tags rec{"a"};
  CHECK_THROWS_AS(precision_recall_f1(rec, Tags{"a"}, 0), std::invalid_argument);
  CHECK_THROWS_AS(precision_recall_f1(rec, Tags{"a"}, 11), std::invalid_argument);
}

TEST_CASE("reciprocal rank") {
  CHECK(reciprocal_rank(Tags{"a", "x"}, Tags{"a"}) == 1.0);
  CHECK(reciprocal_rank(Tags{"x", "a"}, Tags{"a"}) == 0.5);
  CHECK(reciprocal_rank(Tags{"a", "x", "b"}, Tags{"a", "b"}) == doctest::Approx(2.0 / 3.0));
  CHECK(reciprocal_rank(Tags{"x", "y"}, Tags{"a"}) == 0.0);
  CHECK(reciprocal_rank(Tags{"x", "y", "a"}, Tags{"a"}, 2) == 0.0);
}

TEST_CASE("average precision") {
  CHECK(average_precision(Tags{"a"}, Tags{"a"}) == 1.0);
  CHECK(average_precision(Tags{"x", "a"}, Tags{"a"}) == 0.5);
  CHECK(average_precision(Tags{"a", "x", "b"}, Tags{"a", "b"}) == doctest::Approx(5.0 / 6.0));
  CHECK(average_precision(Tags{}, Tags{"a"}) == 0.0);
}

TEST_CASE("only the first ten ranks count") {
  Tags rec;
  for (int i = 0; i < 10; ++i) rec.push_back("x" + std::to_string(i));
  rec.push_back("a");
  CHECK(reciprocal_rank(rec, Tags{"a"}) == 0.0);
  CHECK(average_precision(rec, Tags{"a"}) == 0.0);
}

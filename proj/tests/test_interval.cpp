#include <doctest.h>

#include "ssv/interval.hpp"

using namespace ssv;

TEST_CASE("interval union construction sorts and merges") {
  IntervalUnion u({{4.0, 6.0}, {1.0, 2.0}});
  REQUIRE(u.size() == 2);
  CHECK(u.intervals()[0] == std::pair<double, double>{1.0, 2.0});
  CHECK(u.intervals()[1] == std::pair<double, double>{4.0, 6.0});

  IntervalUnion merged({{1.0, 2.0}, {2.0, 3.0}, {2.5, 4.0}});
  CHECK(merged.size() == 1);
  CHECK(merged.lo() == 1.0);
  CHECK(merged.hi() == 4.0);
}

TEST_CASE("membership uses closed endpoints") {
  IntervalUnion u({{1.0, 2.0}, {4.0, 6.0}});
  CHECK(u.contains(1.0));
  CHECK(u.contains(2.0));
  CHECK(u.contains(5.0));
  CHECK_FALSE(u.contains(3.0));
  CHECK_FALSE(u.contains(0.999999));
  CHECK_FALSE(u.contains(6.0000001));
}

TEST_CASE("serialization round trip") {
  IntervalUnion u({{-2.0, -1.0}, {1.0, 2.5}});
  const auto text = u.to_string();
  CHECK(IntervalUnion::parse(text) == u);
  CHECK(IntervalUnion::parse("-8:-6").contains(-7.0));
  CHECK_THROWS_AS(IntervalUnion::parse("1-2"), ArgumentError);
  CHECK_THROWS_AS(IntervalUnion(2.0, 1.0), ArgumentError);
}

TEST_CASE("set distance and shift") {
  IntervalUnion a(-3.0, -2.0);
  IntervalUnion b(1.0, 3.0);
  CHECK(set_distance(a, b) == doctest::Approx(3.0));
  CHECK(set_distance(a, a) == 0.0);
  const auto c = a.shifted(5.0);
  CHECK(c.lo() == 2.0);
  CHECK(c.hi() == 3.0);
  CHECK(a.abs_bound() == 3.0);
}

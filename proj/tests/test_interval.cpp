#include <doctest.h>

#include <random>

#include "coblab/interval.hpp"
#include "oracles.hpp"

using namespace coblab;

TEST_CASE("interval arithmetic encloses exact results") {
  const Interval third = Interval::from_mpq(mpq_class(1, 3));
  CHECK(third.contains(mpq_class(1, 3)));
  CHECK_FALSE(third.is_point());
  const Interval one = third * 3L;
  CHECK(one.contains(1.0));
  CHECK(one.width() < 1e-35);

  const Interval root2 = sqrt(Interval::from_int(2));
  CHECK(sqr(root2).contains(2.0));
  CHECK(root2.mid() == doctest::Approx(1.4142135623730951));
}

TEST_CASE("division by an interval containing zero throws") {
  const Interval z = Interval::from_bounds(-1e-3, 1e-3);
  CHECK_THROWS_AS(Interval::from_int(1) / z, std::domain_error);
}

TEST_CASE("nearest integer distance") {
  const Interval x = sqrt(Interval::from_int(2)) * 8L;
  const Interval d = nearest_int_distance(x);
  CHECK(d.mid() == doctest::Approx(0.313708498984760390413509793677584628557).epsilon(1e-15));
  CHECK(d.width() < 1e-30);

  // An interval straddling an integer has distance enclosure starting at 0.
  const Interval around = Interval::from_bounds(2.999, 3.001);
  CHECK(nearest_int_distance(around).lower() == 0.0);
  // Straddling a half integer reaches 1/2.
  const Interval half = Interval::from_bounds(0.499, 0.501);
  CHECK(nearest_int_distance(half).upper() == 0.5);
}

TEST_CASE("trigonometric enclosures") {
  const Interval pi = Interval::pi();
  CHECK(sin(pi).contains_zero());
  CHECK(cos(pi).contains(-1.0));
  const Interval wide = Interval::from_bounds(1.0, 2.0);
  // pi/2 lies inside, so the upper end must reach 1.
  CHECK(sin(wide).upper() >= 1.0);
  CHECK(sin_pi(Interval::from_mpq(mpq_class(1, 6))).mid() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("certified comparisons") {
  const Interval a = Interval::from_bounds(1.0, 2.0);
  const Interval b = Interval::from_bounds(2.5, 3.0);
  CHECK(certainly_less(a, b));
  CHECK_FALSE(certainly_less(b, a));
  const Interval c = Interval::from_bounds(1.5, 2.7);
  CHECK_FALSE(certainly_less(a, c));
  CHECK_FALSE(certainly_greater(a, c));
  CHECK(certainly_positive(a));
}

TEST_CASE("exact floor") {
  CHECK(exact_floor(Interval::from_bounds(2.1, 2.9)).value() == 2);
  CHECK_FALSE(exact_floor(Interval::from_bounds(2.9, 3.1)).has_value());
}

TEST_CASE("property: distance enclosures contain the decimal oracle") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> pick(1, 1000000);
  for (int i = 0; i < 200; ++i) {
    const long q = pick(rng);
    const Interval x = sqrt(Interval::from_int(2)) * q;
    const double expected = oracle::nearest_int_distance(0, 1, 2, 1, q);
    const Interval d = nearest_int_distance(x);
    INFO("q = " << q);
    CHECK(d.lower() <= expected * (1 + 1e-15));
    CHECK(d.upper() >= expected * (1 - 1e-15));
    CHECK(d.width() < 1e-25);
  }
}

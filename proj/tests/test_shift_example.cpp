#include <doctest.h>

#include <cmath>

#include "coblab/errors.hpp"
#include "coblab/shift_example.hpp"
#include "oracles.hpp"

using namespace coblab;

namespace {

constexpr double kPi2Over6MinusZeta3 = 0.442877163688632151;
constexpr double kZeta32Minus1 = 1.612375348685488343;
constexpr double kHarmonic1e4 = 8.787706026045382164;  // sum_{k=1}^{10^4} 1/(k+1)

}  // namespace

TEST_CASE("build_h kinds and values") {
  const auto h2 = build_h(2.0);
  CHECK(h2.kind == LatticeFunction::Kind::power);
  CHECK(h2.a == 3.0);
  CHECK(h2.at(1, 1).mid() == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-15));
  CHECK(h2.value(1, 1) == doctest::Approx(0.3535533905932738));
  CHECK(h2.at(2, 3).width() < 1e-30);

  const auto h1 = build_h(1.0);
  CHECK(h1.kind == LatticeFunction::Kind::log_power);
  CHECK(h1.value(1, 1) == doctest::Approx(1.0 / (4.0 * std::log(2.0) * std::log(2.0))));

  CHECK(build_h(3.5).a == 4.5);
  CHECK_THROWS_AS(build_h(0.5), ConfigError);
  CHECK_THROWS_AS(build_h(std::nan("")), ConfigError);
}

TEST_CASE("lattice functions are positive and decreasing in j + k") {
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    const auto h = build_h(p);
    for (std::int64_t s = 2; s < 200; ++s) {
      const Interval a = h.at_diagonal(s);
      const Interval b = h.at_diagonal(s + 1);
      REQUIRE(certainly_positive(b));
      REQUIRE(certainly_greater(a, b));
    }
  }
}

TEST_CASE("lp norm of the power kind at p = 2") {
  const auto h = build_h(2.0);
  const auto one = lp_partial_norm(h, 2.0, 1, 1);
  CHECK(one.partial.mid() == doctest::Approx(0.125));
  CHECK(one.partial.width() < 1e-30);

  const auto n = lp_partial_norm(h, 2.0, 2000, 2000);
  CHECK(n.total.contains(kPi2Over6MinusZeta3));
  CHECK(n.total.width() < 1e-6);
  CHECK(n.partial.upper() < kPi2Over6MinusZeta3);
  CHECK(n.partial.upper() + n.tail_bound.upper() >= kPi2Over6MinusZeta3);

  // Rectangles and diagonals agree on the truncation.
  const auto r = lp_partial_norm(h, 2.0, 30, 7);
  double direct = 0.0;
  for (int j = 1; j <= 30; ++j)
    for (int k = 1; k <= 7; ++k) direct += std::pow(j + k, -3.0);
  CHECK(r.partial.mid() == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("lp norm diverges when the exponent is too small") {
  const auto h = build_h(2.0);
  const auto n = lp_partial_norm(h, 1.0, 50, 50);  // sum (s-1) s^(-3/2) diverges
  CHECK(!n.tail_bound.is_finite());
  CHECK(!n.total.is_finite());
}

TEST_CASE("log-power partial sums sit under the majorant") {
  const auto h = build_h(1.0);
  for (std::int64_t J : {1, 10, 200}) {
    const auto n = lp_partial_norm(h, 1.0, J, 5000);
    CHECK(certainly_less_equal(n.partial, log_power_majorant(J)));
  }
  const auto n = lp_partial_norm(h, 1.0, 500, 500);
  CHECK(n.total.is_finite());
  CHECK(certainly_less_equal(n.partial, n.total));
  CHECK(log_power_majorant(1).mid() == doctest::Approx(1.0 / (std::log(2.0) * std::log(2.0))).epsilon(1e-15));
}

TEST_CASE("q grid for the power kind") {
  const auto h = build_h(2.0);
  const auto q = build_q(h, 4, 6, 20000);
  CHECK(q.bounds_certified);
  CHECK(q.at(1, 1).contains(kZeta32Minus1));
  CHECK(q.at(1, 1).width() < 1e-6);
  for (std::int64_t s = 2; s < 10; ++s) CHECK(certainly_greater(q.diagonal(s), q.diagonal(s + 1)));
  CHECK(q.at(2, 3).contains(q.at(1, 4)));
  CHECK_THROWS_AS(build_q(h, 0, 3), ConfigError);
}

TEST_CASE("q grid enclosures contain the direct-summation oracle") {
  for (double p : {1.0, 2.0, 3.0}) {
    const auto h = build_h(p);
    const std::int64_t tail_terms = 2000;
    const auto q = build_q(h, 5, 5, tail_terms);
    for (std::int64_t s = 2; s <= 10; ++s) {
      const long double v = oracle::shift_tail_sum(s, h.a / h.p, h.kind == LatticeFunction::Kind::log_power,
                                                   10 * (tail_terms + 10));
      INFO("p = " << p << ", s = " << s);
      CHECK(q.diagonal(s).contains(static_cast<double>(v)));
    }
  }
}

TEST_CASE("shift difference roundtrip") {
  for (double p : {1.0, 2.0, 5.0}) {
    const auto h = build_h(p);
    const auto q = build_q(h, 20, 30, 5000);
    const double width = q.tail.width();
    CHECK(roundtrip_residual(q, h) <= 4.0 * width + 1e-30);
  }
  // (I-U)(I-V) q at an interior point, by hand.
  const auto h = build_h(2.0);
  const auto q = build_q(h, 3, 3, 1000);
  const Interval d = q.at(1, 1) - q.at(2, 1) - q.at(1, 2) + q.at(2, 2);
  CHECK(d.mid() == doctest::Approx(h.value(1, 1) - h.value(2, 1)).epsilon(1e-12));
}

TEST_CASE("log-power threshold") {
  const auto J0 = log_power_threshold();
  CHECK(J0 == 5504);
  CHECK(std::sqrt(static_cast<double>(J0)) >= std::pow(std::log(static_cast<double>(J0)), 2));
  CHECK(std::sqrt(static_cast<double>(J0 - 1)) < std::pow(std::log(static_cast<double>(J0 - 1)), 2));
}

TEST_CASE("row-sum lower bound grows and is monotone") {
  const Interval b = row_sum_lower_bound(2.0, 10000);
  const double expected = 4.0 * kHarmonic1e4 * (1 - kShiftEpsilon) * (1 - kShiftEpsilon);
  CHECK(b.mid() == doctest::Approx(expected).epsilon(1e-15));
  CHECK(b.lower() >= 30.0);
  CHECK(b.lower() >= 4.0 * (std::log(1e4) - 1.0) * (1 - kShiftEpsilon) * (1 - kShiftEpsilon));
  double previous = 0.0;
  for (std::int64_t K : {1, 2, 10, 100, 1000, 10000}) {
    const double v = row_sum_lower_bound(2.0, K).lower();
    CHECK(v > previous);
    previous = v;
  }
  CHECK_THROWS_AS(row_sum_lower_bound(1.0, 10), ConfigError);
}

TEST_CASE("divergence certificate for p = 2") {
  const auto c = divergence_certificate(2.0, 10000);
  CHECK(c.kind == CertificateKind::divergence_witness);
  CHECK(c.verdict());
  CHECK(c.notes.empty());
  bool found = false;
  for (const auto& [name, value] : c.values) {
    if (name == "row_sum_lower_bound") {
      found = true;
      CHECK(value.lower() >= 30.0);
    }
  }
  CHECK(found);
}

TEST_CASE("divergence certificate at the r = 2p boundary and other p") {
  const auto boundary = divergence_certificate(2.0, 100, 4.0);
  CHECK(boundary.verdict());
  CHECK(boundary.notes.size() == 1);

  CHECK(divergence_certificate(1.5, 500).verdict());
  CHECK(divergence_certificate(3.0, 500, 7.5).verdict());
}

TEST_CASE("divergence certificate for the log-power case") {
  const auto c = divergence_certificate(1.0, 2000);
  CHECK(c.verdict());
  bool has_j0 = false;
  for (const auto& [name, value] : c.values) has_j0 = has_j0 || (name == "J0" && value.contains(5504.0));
  CHECK(has_j0);
  CHECK_THROWS_AS(divergence_certificate(0.9, 10), ConfigError);
}

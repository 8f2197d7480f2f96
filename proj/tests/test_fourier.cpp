#include <doctest.h>

#include <random>

#include "coblab/errors.hpp"
#include "coblab/fourier.hpp"
#include "oracles.hpp"

using namespace coblab;

namespace {

const Irrational kAlpha = Irrational::parse("sqrt(2)-1");
const Irrational kBeta = Irrational::parse("sqrt(3)-1");

}  // namespace

TEST_CASE("sparse series storage") {
  SparseFourierSeries f = SparseFourierSeries::from_coefficients({{3, {1.0, 0.0}}, {-2, {0.0, 2.0}}, {5, {0.0, 0.0}}});
  CHECK(f.size() == 2);
  CHECK(f.support() == std::vector<std::int64_t>{-2, 3});
  CHECK(f.coeff(7).is_zero());
  CHECK(f.is_centered());
  CHECK(f.l1_norm().mid() == doctest::Approx(3.0));
  CHECK(f.l2_norm_squared().mid() == doctest::Approx(5.0));
  CHECK_THROWS_AS(SparseFourierSeries::from_coefficients({{1, {1.0, 0.0}}, {1, {2.0, 0.0}}}), ConfigError);
  CHECK_THROWS_AS(f.mark_real_valued(), std::invalid_argument);

  SparseFourierSeries cosine = SparseFourierSeries::from_coefficients({{1, {0.5, 0.0}}, {-1, {0.5, 0.0}}});
  cosine.mark_real_valued();
  CHECK(cosine.real_valued());
  CHECK((cosine - cosine).empty());
}

TEST_CASE("rotation factor") {
  const ComplexInterval e = rotation_factor(kAlpha, 1);
  CHECK(e.re.mid() == doctest::Approx(-0.858216185668817691661895692567673899967).epsilon(1e-15));
  CHECK(e.im.mid() == doctest::Approx(0.513288397157061635206666941060365916583).epsilon(1e-15));
  CHECK(e.abs().contains(1.0));
  CHECK(e.radius() < 1e-30);
}

TEST_CASE("coboundary solution for a single mode") {
  const auto f = SparseFourierSeries::single_mode(1, {1.0, 0.0});
  const auto sol = solve_coboundary(f, kAlpha);
  REQUIRE(sol.report.records.size() == 1);
  CHECK(sol.series.coeff(1).abs().mid() == doctest::Approx(0.518724645864036056726853851589).epsilon(1e-15));
  CHECK(sol.report.records[0].divisor.mid() ==
        doctest::Approx(1.0 / 0.518724645864036056726853851589).epsilon(1e-15));
  CHECK_FALSE(sol.report.divisor_encloses_zero);
  // Real part of 1/(1 - e(x)) is exactly 1/2.
  CHECK(sol.series.coeff(1).re.contains(0.5));

  const auto h = double_solve(f, kAlpha, kBeta);
  CHECK(h.series.coeff(1).abs().mid() == doctest::Approx(0.347747668434801968).epsilon(1e-15));
}

TEST_CASE("solvers reject a constant term") {
  const auto f = SparseFourierSeries::from_coefficients({{0, {1.0, 0.0}}, {1, {1.0, 0.0}}});
  CHECK_THROWS_AS(solve_coboundary(f, kAlpha), ConfigError);
  CHECK_THROWS_AS(transfer_coefficients(f, kAlpha, kBeta), ConfigError);
  CHECK_THROWS_AS(double_solve(f, kAlpha, kBeta), ConfigError);
}

TEST_CASE("property: solvers invert the coboundary operators") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_centered_polynomial(rng, 1 + trial % 7);
    CHECK(f.l2_norm().mid() == doctest::Approx(1.0).epsilon(1e-12));

    const auto g = solve_coboundary(f, kAlpha).series;
    CHECK(max_relative_difference(apply_coboundary(g, kAlpha), f) < 1e-25);

    const auto t = transfer_coefficients(f, kAlpha, kBeta).series;
    CHECK(max_relative_difference(apply_coboundary(t, kBeta), apply_coboundary(f, kAlpha)) < 1e-25);

    const auto h = double_solve(f, kAlpha, kBeta).series;
    CHECK(max_relative_difference(apply_coboundary(apply_coboundary(h, kAlpha), kBeta), f) < 1e-25);

    // (I - T) = identity minus rotation.
    CHECK(max_relative_difference(apply_coboundary(f, kAlpha), f - apply_rotation(f, kAlpha)) < 1e-25);
  }
}

TEST_CASE("real-valued flag propagates") {
  SparseFourierSeries f = SparseFourierSeries::from_coefficients({{2, {0.3, -0.4}}, {-2, {0.3, 0.4}}});
  f.mark_real_valued();
  CHECK(apply_rotation(f, kAlpha).real_valued());
  CHECK(solve_coboundary(f, kAlpha).series.real_valued());
  CHECK(double_solve(f, kAlpha, kBeta).series.real_valued());
}

TEST_CASE("Dirichlet kernel") {
  const Interval x = kAlpha.enclose();
  CHECK(dirichlet_kernel(0, x).contains(0.0));
  CHECK(dirichlet_kernel(1, x).contains(1.0));
  // |1 + e(x)| = 2 |cos(pi x)|
  CHECK(dirichlet_kernel(2, x).mid() == doctest::Approx(2.0 * std::abs(std::cos(M_PI * kAlpha.approx()))));
  CHECK_THROWS_AS(dirichlet_kernel(3, Interval::from_bounds(-1e-3, 1e-3)), std::domain_error);
  CHECK_THROWS_AS(dirichlet_kernel(-1, x), ConfigError);
}

TEST_CASE("property: ergodic sums match brute-force summation") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 6; ++trial) {
    const auto f = random_centered_polynomial(rng, 2 + trial);
    std::vector<std::pair<std::int64_t, std::complex<double>>> raw;
    for (const auto& [n, c] : f.coefficients()) raw.emplace_back(n, c.mid());
    const ErgodicSumEvaluator eval(f, kAlpha, kBeta);
    for (std::int64_t n : {1, 7, 40, 100}) {
      for (std::int64_t m : {1, 13, 60}) {
        const double fast = eval.double_sum(n, m);
        const double brute = oracle::double_ergodic_sum(raw, kAlpha.approx(), kBeta.approx(), n, m);
        CHECK(fast == doctest::Approx(brute).epsilon(1e-9));
        const Interval certified = eval.double_sum_enclosure(n, m);
        CHECK(certified.lower() <= fast * (1 + 1e-12));
        CHECK(certified.upper() >= fast * (1 - 1e-12));
      }
      const double browder = eval.browder(n);
      CHECK(browder == doctest::Approx(oracle::double_ergodic_sum(raw, kAlpha.approx(), 0.0L, n, 1)).epsilon(1e-9));
    }
  }
}

TEST_CASE("coboundaries have bounded ergodic sums") {
  // f = (I - T_alpha) g has || S_n f || = || g - T^n g || <= 2 ||g||.
  const auto g = SparseFourierSeries::from_coefficients({{1, {1.0, 0.0}}, {-3, {0.5, 0.5}}});
  const auto f = apply_coboundary(g, kAlpha);
  const ErgodicSumEvaluator eval(f, kAlpha);
  for (std::int64_t n = 1; n < 5000; n += 97) CHECK(eval.browder(n) <= 2.0 * g.l2_norm().upper() + 1e-12);
}

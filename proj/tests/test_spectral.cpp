#include <doctest.h>

#include <random>

#include "coblab/errors.hpp"
#include "coblab/spectral.hpp"

using namespace coblab;

namespace {

const Irrational kAlpha = Irrational::parse("sqrt(2)-1");
const Irrational kBeta = Irrational::parse("sqrt(3)-1");

}  // namespace

TEST_CASE("spectral measure layout") {
  const auto f = SparseFourierSeries::from_coefficients({{2, {1.0, 0.0}}, {-1, {0.0, 2.0}}, {1, {3.0, 0.0}}});
  const auto m = spectral_measure(f, kAlpha, kBeta);
  REQUIRE(m.atoms.size() == 3);
  CHECK(m.atoms[0].n == -1);
  CHECK(m.atoms[1].n == 1);
  CHECK(m.atoms[2].n == 2);
  CHECK(m.total_mass().contains(14.0));
  CHECK(m.find(1)->mass.contains(9.0));
  CHECK(m.find(5) == nullptr);

  const auto constant = spectral_measure(SparseFourierSeries::single_mode(0, {2.0, 0.0}), kAlpha, kBeta);
  REQUIRE(constant.atoms.size() == 1);
  CHECK(constant.atoms[0].mass.contains(4.0));
  CHECK(coboundary_integral(constant, Side::alpha).divergent);
  CHECK(double_criterion_sum(constant, 1.0).threshold_exceeded);
}

TEST_CASE("single mode integral") {
  const auto m = spectral_measure(SparseFourierSeries::single_mode(1, {1.0, 0.0}), kAlpha, kBeta);
  const auto s = coboundary_integral(m, Side::alpha);
  CHECK_FALSE(s.divergent);
  CHECK(s.value.mid() == doctest::Approx(0.269075258226769619332232559589).epsilon(1e-15));
  CHECK(s.value.width() < 1e-30);
}

TEST_CASE("empty measure") {
  const AtomicSpectralMeasure empty;
  CHECK(joint_criterion_sum(empty).sum.value.contains(0.0));
  CHECK(double_criterion_sum(empty).sum.value.contains(0.0));
}

TEST_CASE("property: criteria reproduce the preimage norms") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_centered_polynomial(rng, 1 + trial % 10);
    const auto once = apply_coboundary(g, kAlpha);
    const auto m1 = spectral_measure(once, kAlpha, kBeta);
    CHECK(coboundary_integral(m1, Side::alpha).value.mid() == doctest::Approx(g.l2_norm_squared().mid()).epsilon(1e-12));

    const auto joint = joint_criterion_sum(m1);
    CHECK(joint.cross_check < 1e-12);

    const auto twice = apply_coboundary(once, kBeta);
    const auto m2 = spectral_measure(twice, kAlpha, kBeta);
    CHECK(double_criterion_sum(m2).sum.value.mid() == doctest::Approx(g.l2_norm_squared().mid()).epsilon(1e-12));
    CHECK(m2.total_mass().mid() == doctest::Approx(twice.l2_norm_squared().mid()).epsilon(1e-14));
  }
}

TEST_CASE("threshold reporting") {
  const auto f = SparseFourierSeries::from_coefficients({{1, {1.0, 0.0}}, {2, {1.0, 0.0}}});
  const auto m = spectral_measure(f, kAlpha, kBeta);
  const auto d = double_criterion_sum(m, 0.1);
  CHECK(d.threshold_exceeded);
  REQUIRE(d.sum.terms.size() == 2);
  CHECK(d.sum.terms[1].cumulative.contains(d.sum.value));
  CHECK_FALSE(double_criterion_sum(m, 1e6).threshold_exceeded);
}

TEST_CASE("Cesaro rates") {
  const auto constant = SparseFourierSeries::single_mode(0, {0.5, 0.0});
  const auto rows = cesaro_rate_profile(constant, kAlpha, kBeta, {1, 10, 100});
  CHECK(rows[2].per_n.mid() == doctest::Approx(50.0));
  CHECK(rows[2].per_n2.mid() == doctest::Approx(0.5));

  const auto single = SparseFourierSeries::single_mode(3, {1.0, 0.0});
  const auto r = cesaro_rate_profile(single, kAlpha, kBeta, {17});
  const double da = dirichlet_kernel(17, kAlpha.enclose_multiple(3L)).mid();
  const double db = dirichlet_kernel(17, kBeta.enclose_multiple(3L)).mid();
  CHECK(r[0].per_n.mid() == doctest::Approx(da * db / 17.0).epsilon(1e-12));

  // Joint coboundaries have vanishing 1/n rates.
  std::mt19937_64 rng(5);
  const auto g = random_centered_polynomial(rng, 4);
  const auto h = random_centered_polynomial(rng, 4);
  const auto f = apply_coboundary(g, kAlpha) + apply_coboundary(h, kBeta);
  const auto prof = cesaro_rate_profile(f, kAlpha, kBeta, {10, 100, 1000, 10000});
  CHECK(prof[3].per_n.upper() < prof[0].per_n.lower());
  CHECK(prof[3].per_n.upper() < 0.01);
  CHECK_THROWS_AS(cesaro_rate_profile(f, kAlpha, kBeta, {0}), ConfigError);
}

TEST_CASE("doubling and tripling variance is exactly one") {
  for (std::int64_t n : {1, 4, 64}) {
    const auto v = doubling_tripling_variance(n);
    CHECK(v.value == 1);
    CHECK(v.distinct == static_cast<std::size_t>(n * n));
  }
  CHECK_THROWS_AS(doubling_tripling_variance(0), ConfigError);
}

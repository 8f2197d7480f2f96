#include <doctest.h>

#include <cmath>
#include <random>

#include "coblab/diophantine.hpp"
#include "coblab/errors.hpp"
#include "oracles.hpp"

using namespace coblab;

namespace {

const Irrational kAlpha = Irrational::parse("sqrt(2)-1");
const Irrational kBeta = Irrational::parse("sqrt(3)-1");

std::vector<long> to_longs(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

}  // namespace

TEST_CASE("continued fractions") {
  CHECK(to_longs(continued_fraction(Irrational::parse("sqrt(3)"), 6)) == std::vector<long>{1, 1, 2, 1, 2, 1, 2});
  CHECK(to_longs(continued_fraction(Irrational::parse("(sqrt(5)-1)/2"), 4)) == std::vector<long>{0, 1, 1, 1, 1});
  CHECK(to_longs(continued_fraction(Irrational::parse("-sqrt(2)"), 3)) == std::vector<long>{-2, 1, 1, 2});
  CHECK(to_longs(continued_fraction(Irrational::parse("(1+sqrt(7))/3"), 5)) == std::vector<long>{1, 4, 1, 1, 1, 4});

  const auto conv = convergents(continued_fraction(Irrational::parse("sqrt(2)"), 5));
  std::vector<long> q;
  for (const auto& c : conv) q.push_back(c.q.get_si());
  CHECK(q == std::vector<long>{1, 2, 5, 12, 29, 70});
  CHECK(conv[5].p == 99);

  const auto expansion = periodic_expansion(Irrational::parse("sqrt(3)"));
  CHECK(to_longs(expansion.preperiod) == std::vector<long>{1});
  CHECK(to_longs(expansion.period) == std::vector<long>{1, 2});
}

TEST_CASE("nearest integer distances match frozen values") {
  const Interval d = nearest_integer_distance(Irrational::parse("sqrt(2)"), 8, 1e-30);
  CHECK(d.width() <= 1e-30);
  CHECK(d.mid() == doctest::Approx(0.313708498984760390413509793677584628557).epsilon(1e-15));
  const Interval g = nearest_integer_distance(Irrational::parse("(sqrt(5)-1)/2"), 5, 1e-30);
  CHECK(g.mid() == doctest::Approx(0.0901699437494742410229341718281905886).epsilon(1e-15));
}

TEST_CASE("precision escalation reaches tight tolerances") {
  const mpz_class huge("1000000000000000000000000000000");
  const Interval d = nearest_integer_distance(kAlpha, huge, 1e-40);
  CHECK(d.width() <= 1e-40);
  PrecisionPolicy tiny{64, 64};
  CHECK_THROWS_AS(nearest_integer_distance(kAlpha, huge, 1e-40, tiny), PrecisionExhausted);
}

TEST_CASE("Dirichlet search on a small range") {
  const auto result = dirichlet_pair_search(kAlpha, kBeta, 5);
  std::vector<std::int64_t> qs;
  for (const auto& r : result.records) qs.push_back(r.q);
  CHECK(qs == std::vector<std::int64_t>{1, 2, 3, 4, 5});
  CHECK(result.unresolved.empty());
  CHECK(result.records[1].dist_beta.mid() == doctest::Approx(0.46410162).epsilon(1e-7));
  CHECK(dominance(result.records[1]) == Dominance::beta);
  CHECK(dominance(result.records[4]) == Dominance::beta);
  CHECK(dominance(result.records[0]) == Dominance::alpha);
}

TEST_CASE("Dirichlet search agrees across thread counts and with the oracle") {
  SearchOptions one;
  SearchOptions four;
  four.threads = 4;
  const auto a = dirichlet_pair_search(kAlpha, kBeta, 20000, one);
  const auto b = dirichlet_pair_search(kAlpha, kBeta, 20000, four);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) CHECK(a.records[i].q == b.records[i].q);
  // Independent recount with the decimal oracle.
  std::size_t count = 0;
  for (long q = 1; q <= 20000; ++q) {
    const double da = oracle::nearest_int_distance(-1, 1, 2, 1, q, 60);
    const double db = oracle::nearest_int_distance(-1, 1, 3, 1, q, 60);
    if (std::max(da, db) * std::sqrt(static_cast<double>(q)) < 1.0) ++count;
  }
  CHECK(count == a.records.size());
}

TEST_CASE("lacunary selection") {
  const Irrational root2 = Irrational::parse("sqrt(2)");
  std::vector<ApproximationRecord> records;
  for (long q : {2, 5, 12, 29, 70}) records.push_back(make_record(root2, kBeta, q));
  const auto sel = select_summable_lacunary(records);
  CHECK(sel.picked.size() == 5);
  CHECK(sel.inverse_sqrt_sum.mid() == doctest::Approx(1.748213710391809573).epsilon(1e-15));

  // Ratio filter.
  const auto strict = select_summable_lacunary(records, 3.0);
  std::vector<std::int64_t> qs;
  for (const auto& r : strict.picked) qs.push_back(r.q);
  CHECK(qs == std::vector<std::int64_t>{2, 12, 70});

  // Budget filter.
  const auto tight = select_summable_lacunary(records, 2.0, 1.2);
  CHECK(certainly_less_equal(tight.inverse_sqrt_sum, Interval::from_bounds(1.2, 1.2)));

  CHECK_THROWS_AS(select_summable_lacunary({records[0]}), Shortfall);
}

TEST_CASE("lacunary selection on the default pair reaches ten terms") {
  const auto found = dirichlet_pair_search(kAlpha, kBeta, 1000000, SearchOptions{1e-20, 4, {}});
  CHECK(found.records.size() == 53);
  const auto sel = select_summable_lacunary(found.records);
  std::vector<std::int64_t> qs;
  for (const auto& r : sel.picked) qs.push_back(r.q);
  CHECK(qs == std::vector<std::int64_t>{1, 2, 4, 8, 19, 41, 82, 164, 1183, 2646, 5572, 12368, 37063, 134421,
                                        326491, 652982});
  CHECK(sel.inverse_sqrt_sum.mid() == doctest::Approx(3.2166).epsilon(1e-4));
}

TEST_CASE("bad pair constant estimate") {
  const auto est = bad_pair_constant(kAlpha, kBeta, 2000);
  CHECK(est.value.lower() > 0.0);
  CHECK(est.value.upper() < 1.0);
  CHECK(est.argmin >= 1);
  REQUIRE_FALSE(est.record_lows.empty());
  for (std::size_t i = 1; i < est.record_lows.size(); ++i) {
    CHECK(est.record_lows[i].first > est.record_lows[i - 1].first);
    CHECK(est.record_lows[i].second.mid() < est.record_lows[i - 1].second.mid());
  }
  CHECK(est.beta_dominant_count > 0);
}

TEST_CASE("badness profile") {
  const auto golden = badness_profile(Irrational::parse("(sqrt(5)-1)/2"), 20);
  CHECK(golden.max_quotient == 1);
  CHECK(golden.period_length == 1);
  // q ||q phi|| tends to 1/sqrt(5).
  CHECK(golden.convergent_values.back().second.mid() == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-6));
  const auto root3 = badness_profile(Irrational::parse("sqrt(3)"), 10);
  CHECK(root3.max_quotient == 2);
  CHECK(root3.period_length == 2);
  CHECK_THROWS_AS(badness_profile(kAlpha, 1), ConfigError);
}

TEST_CASE("square approximations") {
  const Irrational root2 = Irrational::parse("sqrt(2)");
  const auto hits = square_approximation_search(root2, 0.6, 2000);
  REQUIRE_FALSE(hits.empty());
  for (const auto& h : hits) {
    const double expected = oracle::nearest_int_distance(0, 1, 2, 1, h.n * h.n, 60);
    CHECK(h.dist.lower() <= expected * (1 + 1e-12));
    CHECK(h.dist.upper() >= expected * (1 - 1e-12));
    CHECK(expected < std::pow(static_cast<double>(h.n), -0.6));
  }
  // Completeness against a brute-force scan, skipping near-threshold cases.
  std::size_t expected_count = 0;
  for (long n = 1; n <= 2000; ++n) {
    const double dist = oracle::nearest_int_distance(0, 1, 2, 1, n * n, 60);
    if (dist < std::pow(static_cast<double>(n), -0.6)) ++expected_count;
  }
  CHECK(hits.size() == expected_count);
  CHECK_THROWS_AS(square_approximation_search(root2, 0.4, 10), ConfigError);
  CHECK_THROWS_AS(square_approximation_search(root2, 0.7, 10), ConfigError);
}

TEST_CASE("integer dependence") {
  const Irrational a = Irrational::parse("sqrt(2)-1");
  const auto unit = integer_dependence_search(a, Irrational::parse("sqrt(2)"), 5);
  REQUIRE(unit.dependence.has_value());
  CHECK(unit.dependence->m == 1);
  CHECK(unit.dependence->n == -1);
  CHECK(unit.dependence->p == 1);

  const auto two_three = integer_dependence_search(Irrational::parse("sqrt(2)"),
                                                   Irrational::parse("(2*sqrt(2)+1)/3"), 5);
  REQUIRE(two_three.dependence.has_value());
  CHECK(two_three.dependence->m == 2);
  CHECK(two_three.dependence->n == -3);
  CHECK(two_three.dependence->p == 1);
  CHECK(two_three.dependence->gcd_mn == 1);
  CHECK(is_dependence(Irrational::parse("sqrt(2)"), Irrational::parse("(2*sqrt(2)+1)/3"), 2, -3, 1));

  const auto none = integer_dependence_search(kAlpha, kBeta, 10);
  CHECK_FALSE(none.dependence.has_value());
  CHECK(none.proven_independent);

  const auto too_small = integer_dependence_search(Irrational::parse("sqrt(2)"),
                                                   Irrational::parse("(2*sqrt(2)+1)/3"), 2);
  CHECK_FALSE(too_small.dependence.has_value());
  CHECK_FALSE(too_small.proven_independent);
}

TEST_CASE("bad pair screening matches a full certified scan") {
  const std::int64_t Q = 3000;
  const auto est = bad_pair_constant(kAlpha, kBeta, Q);
  std::int64_t beta_count = 0;
  Interval best = make_record(kAlpha, kBeta, 1).quality;
  std::int64_t argmin = 1;
  for (std::int64_t q = 1; q <= Q; ++q) {
    const auto rec = make_record(kAlpha, kBeta, q);
    if (dominance(rec) == Dominance::beta) ++beta_count;
    if (rec.quality.mid() < best.mid()) argmin = q;
    best = min(best, rec.quality);
  }
  CHECK(est.beta_dominant_count == beta_count);
  CHECK(est.argmin == argmin);
  CHECK(est.value.lower() == best.lower());
  CHECK(est.value.upper() == best.upper());
  SearchOptions threaded;
  threaded.threads = 3;
  CHECK(bad_pair_constant(kAlpha, kBeta, Q, threaded).record_lows.size() == est.record_lows.size());
}

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "coblab/constructions.hpp"
#include "coblab/shift_example.hpp"
#include "coblab/spectral.hpp"
#include "oracles.hpp"

using namespace coblab;

namespace {

const Irrational kAlpha = Irrational::parse("sqrt(2)-1");
const Irrational kBeta = Irrational::parse("sqrt(3)-1");

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

ConstructionResult pipeline() {
  ConstructionOptions opts;
  opts.threads = 1;
  return build_joint_not_double(kAlpha, kBeta, 10, 1000000, opts);
}

const Certificate* find_certificate(const ConstructionResult& r, CertificateKind kind) {
  for (const auto& c : r.certificates) {
    if (c.kind == kind) return &c;
  }
  return nullptr;
}

Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto r = pipeline();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const Certificate* star = find_certificate(r, CertificateKind::joint_upper_bound);
  const Certificate* dstar = find_certificate(r, CertificateKind::double_lower_bound);
  o.require(star && star->verdict(), "joint upper bound certificate");
  o.require(dstar && dstar->verdict(), "double lower bound certificate");
  o.require(r.q_sequence.size() == 10, "K = 10 terms");

  Interval sum_g(kDefaultPrecision);
  Interval sum_q(kDefaultPrecision);
  const Interval half_pi = Interval::pi() / Interval::from_int(2);
  const Interval quarter = Interval::from_int(1) / Interval::from_int(4);
  const Interval floor_h = Interval::from_int(1) / (Interval::pi() * 2L);
  for (const auto& rec : r.q_sequence) {
    sum_g += r.g.coeff(rec.q).abs();
    sum_q += Interval::from_int(1) / sqrt(Interval::from_int(rec.q));
    const Interval h = r.h.coeff(rec.q).abs();
    o.require(certainly_less_equal(floor_h, h) && certainly_less_equal(h, quarter), "|h| in [1/(2 pi), 1/4]");
    o.require(h.width() <= 1e-10, "|h| width <= 1e-10");
  }
  o.require(certainly_less(sum_g, half_pi * sum_q), "sum |g| < (pi/2) sum q^-1/2");

  const double identity = max_relative_difference(apply_coboundary(r.f, kAlpha), apply_coboundary(r.g, kBeta));
  o.require(identity <= 1e-12, "joint identity");
  o.require(seconds <= 60.0, "runtime <= 60 s");
  o.note("sum|g| = " + fmt(sum_g.mid()) + " < " + fmt((half_pi * sum_q).mid()) + ", identity residual " +
         fmt(identity) + ", " + fmt(seconds) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto r = pipeline();
  const auto phi = apply_coboundary(r.f, kAlpha);
  const auto m = spectral_measure(phi, kAlpha, kBeta);
  const auto joint = joint_criterion_sum(m);
  o.require(!joint.sum.divergent && joint.sum.value.is_finite(), "joint criterion finite");

  const Interval pi2_4 = sqr(Interval::pi()) / Interval::from_int(4);
  Interval bound_total(kDefaultPrecision);
  for (const auto& rec : r.q_sequence) {
    const auto it = std::find_if(joint.sum.terms.begin(), joint.sum.terms.end(),
                                 [&](const CriterionTerm& t) { return t.n == rec.q; });
    o.require(it != joint.sum.terms.end(), "term for q = " + std::to_string(rec.q));
    if (it == joint.sum.terms.end()) continue;
    const Interval bound = Interval::from_int(1) / Interval::from_int(rec.q) + pi2_4 * sqr(rec.dist_alpha);
    bound_total += bound;
    o.require(certainly_less_equal(it->term, bound), "increment bound at q = " + std::to_string(rec.q));
  }
  o.require(certainly_less_equal(joint.sum.value, bound_total), "joint sum <= sum of increment bounds");

  const double threshold = 10.0 / (4.0 * M_PI * M_PI);
  const auto dbl = double_criterion_sum(m, threshold);
  const Interval exact_threshold = Interval::from_int(10) / (sqr(Interval::pi()) * 4L);
  o.require(!dbl.sum.divergent, "double criterion partial sum formed");
  o.require(dbl.threshold_exceeded && certainly_greater_equal(dbl.sum.value, exact_threshold),
            "double partial sum >= K/(4 pi^2)");
  o.note("joint = " + fmt(joint.sum.value.mid()) + ", double = " + fmt(dbl.sum.value.mid()) +
         " >= " + fmt(exact_threshold.mid()));
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto h = random_centered_polynomial(rng, 10);
    const double norm = h.l2_norm().upper();
    const auto phi = apply_coboundary(apply_coboundary(h, kAlpha), kBeta);
    const ErgodicSumEvaluator e(phi, kAlpha, kBeta);
    double peak = 0.0;
    for (std::int64_t n = 1; n <= 1000; ++n) peak = std::max(peak, e.double_sum(n, n));
    worst = std::max(worst, peak / norm);
    o.require(peak <= 4.0 * norm + 1e-9, "seed index " + std::to_string(i));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(seconds <= 120.0, "runtime <= 120 s");
  o.note("max ratio to ||h|| = " + fmt(worst) + " <= 4, " + fmt(seconds) + " s");
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto g = random_centered_polynomial(rng, 10);
    const double norm = g.l2_norm().upper();
    const ErgodicSumEvaluator e(apply_coboundary(g, kAlpha), kAlpha);
    double peak = 0.0;
    for (std::int64_t n = 1; n <= 1000; ++n) peak = std::max(peak, e.browder(n));
    worst = std::max(worst, peak / norm);
    o.require(peak <= 2.0 * norm + 1e-9, "seed index " + std::to_string(i));
  }
  o.note("max ratio to ||g|| = " + fmt(worst) + " <= 2");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (std::int64_t n = 1; n <= 64; ++n) {
    const auto v = doubling_tripling_variance(n);
    o.require(v.value == 1, "variance at n = " + std::to_string(n));
    o.require(v.products == static_cast<std::size_t>(n * n) && v.distinct == v.products,
              "distinct products at n = " + std::to_string(n));
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(seconds <= 5.0, "runtime <= 5 s");
  o.note("exact value 1 for n <= 64, " + fmt(seconds) + " s");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const long double alpha = std::sqrt(2.0L) - 1.0L;
  const long double beta = std::sqrt(3.0L) - 1.0L;
  std::mt19937_64 rng(6);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = random_centered_polynomial(rng, 10);
    std::vector<std::pair<std::int64_t, std::complex<double>>> raw;
    for (const auto& [n, c] : f.coefficients()) raw.push_back({n, c.mid()});
    const ErgodicSumEvaluator e(f, kAlpha, kBeta);
    for (std::int64_t n = 0; n <= 32; ++n) {
      for (std::int64_t m = 0; m <= 32; ++m) {
        const double diff = std::fabs(e.double_sum(n, m) - oracle::double_ergodic_sum(raw, alpha, beta, n, m));
        worst = std::max(worst, diff);
      }
    }
  }
  o.require(worst <= 1e-9, "max difference " + fmt(worst));
  o.note("max |library - oracle| = " + fmt(worst));
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  const std::vector<long> radicands = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15};
  std::uniform_int_distribution<long> a_dist(-5, 5), b_dist(1, 5), c_dist(1, 7), q_dist(1, 1000000);
  std::uniform_int_distribution<std::size_t> d_dist(0, radicands.size() - 1);
  for (int i = 0; i < 20; ++i) {
    const long a = a_dist(rng);
    const long b = b_dist(rng) * ((rng() & 1) ? 1 : -1);
    const long d = radicands[d_dist(rng)];
    const long c = c_dist(rng);
    const long q = q_dist(rng);
    const Irrational x = Irrational::make(a, b, d, c);
    const Interval enc = nearest_integer_distance(x, q, 1e-20);
    const mpq_class exact = oracle::nearest_int_distance_decimal(a, b, d, c, q, 200);
    o.require(enc.contains(exact) && enc.width() <= 1e-20,
              "q = " + std::to_string(q) + ", x = " + x.to_string());
  }
  const auto search = dirichlet_pair_search(kAlpha, kBeta, 10000);
  auto has = [&](std::int64_t q) {
    return std::any_of(search.records.begin(), search.records.end(), [&](const auto& r) { return r.q == q; });
  };
  o.require(!search.records.empty() && has(2) && has(5), "Dirichlet list contains 2 and 5");
  o.require(search.unresolved.empty(), "every q resolved");
  o.note("20 enclosures contain the 200-digit values, " + std::to_string(search.records.size()) +
         " records for Q = 10^4");
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto h = build_h(2.0);
  const auto norm = lp_partial_norm(h, 2.0, 2000, 2000);
  const double target = 0.442877163688632151;
  o.require(norm.total.contains(target) && norm.total.width() <= 1e-6, "l_2 total encloses pi^2/6 - zeta(3)");

  const auto cert = divergence_certificate(2.0, 10000);
  o.require(cert.verdict(), "divergence certificate");
  double row_bound = 0.0;
  bool lr_entry = false;
  for (const auto& [name, value] : cert.values) {
    if (name == "row_sum_lower_bound") row_bound = value.lower();
  }
  for (const auto& e : cert.entries) lr_entry = lr_entry || (e.description.find("q(j,k)^r") != std::string::npos && e.holds);
  o.require(row_bound >= 30.0, "row-sum lower bound >= 30");
  o.require(lr_entry, "l_5 partial sums bounded");

  double previous = 0.0;
  for (std::int64_t K : {10, 100, 1000, 5000, 10000}) {
    const Interval b = row_sum_lower_bound(2.0, K);
    o.require(b.lower() > previous, "monotone at K = " + std::to_string(K));
    previous = b.upper();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(seconds <= 30.0, "runtime <= 30 s");
  o.note("total " + norm.total.to_string(10) + ", row-sum bound " + fmt(row_bound) + ", " + fmt(seconds) + " s");
  return o;
}

Outcome criterion9() {
  Outcome o;
  const Irrational beta = (kAlpha * mpq_class(2) + mpq_class(1)) * mpq_class(1, 3);
  const auto found = integer_dependence_search(kAlpha, beta, 5);
  o.require(found.dependence.has_value(), "dependence found");
  if (!found.dependence) return o;
  const auto& d = *found.dependence;
  o.require(d.m == 2 && d.n == -3 && d.p == 1, "relation (2, -3, 1)");

  std::mt19937_64 rng(9);
  const auto lift = lift_dependent_pair(kAlpha, beta, d, random_centered_polynomial(rng, 5));
  const double reps = max_relative_difference(lift.lift.via_t, lift.lift.via_s);
  o.require(reps <= 1e-12, "two representations of v agree");
  o.require(lift.residual <= 1e-12, "joint identity of the lift");
  o.note("(m, n, p) = (2, -3, 1), representation gap " + fmt(reps));
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto wide = square_approximation_search(kAlpha, 0.6, 10000);
  const auto narrow = square_approximation_search(kAlpha, 0.65, 10000);
  o.require(!wide.empty(), "nonempty delta = 0.6 list");
  std::vector<std::int64_t> wide_n;
  for (const auto& s : wide) {
    wide_n.push_back(s.n);
    o.require(certainly_less(s.dist, s.threshold), "certified hit at n = " + std::to_string(s.n));
  }
  for (const auto& s : narrow) {
    o.require(std::binary_search(wide_n.begin(), wide_n.end(), s.n), "subset at n = " + std::to_string(s.n));
  }
  o.note(std::to_string(wide.size()) + " hits at delta 0.6, " + std::to_string(narrow.size()) + " at 0.65");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"joint-not-double pipeline certificates", criterion1},
      {"spectral dichotomy on (I - T_alpha) f", criterion2},
      {"double-coboundary ergodic sums bounded", criterion3},
      {"Browder bound for coboundaries", criterion4},
      {"doubling/tripling variance exactly 1", criterion5},
      {"double ergodic sums match brute force", criterion6},
      {"Diophantine enclosures and Dirichlet search", criterion7},
      {"shift example norms and divergence", criterion8},
      {"dependent pair and power lift", criterion9},
      {"square approximation search", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2zu: %s  %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

#include "coblab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "coblab/errors.hpp"

namespace coblab {

Interval AtomicSpectralMeasure::total_mass() const {
  Interval total(kCoefficientPrecision);
  for (const auto& a : atoms) total += a.mass;
  return total;
}

const SpectralAtom* AtomicSpectralMeasure::find(std::int64_t n) const {
  for (const auto& a : atoms) {
    if (a.n == n) return &a;
  }
  return nullptr;
}

namespace {

// |1 - e(n x)|^2 = 4 sin^2(pi n x), raising the precision until it is
// separated from zero.
Interval squared_divisor(const Irrational& x, std::int64_t n, const PrecisionPolicy& policy) {
  if (n == 0) return Interval(kCoefficientPrecision);
  for (mpfr_prec_t prec = policy.start; prec <= policy.cap; prec *= 2) {
    const Interval s = sin_pi(reduce_mod1(x.enclose_multiple(static_cast<long>(n), prec)));
    if (!s.contains_zero()) return sqr(s) * 4L;
  }
  throw PrecisionExhausted("spectral_measure: divisor at n = " + std::to_string(n) + " unresolved");
}

bool atom_order(const SpectralAtom& a, const SpectralAtom& b) {
  const auto ka = std::llabs(a.n), kb = std::llabs(b.n);
  return ka != kb ? ka < kb : a.n < b.n;
}

template <class Term>
CriterionSum accumulate(const AtomicSpectralMeasure& m, Term term) {
  CriterionSum out;
  out.value = Interval(kCoefficientPrecision);
  for (const auto& atom : m.atoms) {
    if (atom.n == 0 && !atom.mass.contains_zero()) {
      out.divergent = true;
      out.reason = "nonzero mass at the trivial character";
      out.terms.clear();
      out.value = Interval::positive_infinity();
      return out;
    }
    if (atom.n == 0) continue;
    Interval t = term(atom);
    out.value += t;
    out.terms.push_back({atom.n, std::move(t), out.value});
  }
  return out;
}

}  // namespace

AtomicSpectralMeasure spectral_measure(const SparseFourierSeries& f, const Irrational& alpha,
                                       const Irrational& beta, const PrecisionPolicy& policy) {
  AtomicSpectralMeasure m;
  for (const auto& [n, c] : f.coefficients()) {
    m.atoms.push_back({n, c.norm(), squared_divisor(alpha, n, policy), squared_divisor(beta, n, policy)});
  }
  std::sort(m.atoms.begin(), m.atoms.end(), atom_order);
  return m;
}

CriterionSum coboundary_integral(const AtomicSpectralMeasure& m, Side which) {
  return accumulate(m, [which](const SpectralAtom& a) {
    return a.mass / (which == Side::alpha ? a.divisor_alpha : a.divisor_beta);
  });
}

JointCriterion joint_criterion_sum(const AtomicSpectralMeasure& m) {
  JointCriterion out;
  out.sum = accumulate(m, [](const SpectralAtom& a) {
    return a.mass * (a.divisor_alpha + a.divisor_beta) / (a.divisor_alpha * a.divisor_beta);
  });
  const CriterionSum ia = coboundary_integral(m, Side::alpha);
  const CriterionSum ib = coboundary_integral(m, Side::beta);
  out.alpha_part = ia.value;
  out.beta_part = ib.value;
  if (!out.sum.divergent) {
    const double total = out.sum.value.mid();
    const double parts = ia.value.mid() + ib.value.mid();
    out.cross_check = total == 0.0 ? std::abs(parts) : std::abs(total - parts) / std::abs(total);
  }
  return out;
}

DoubleCriterion double_criterion_sum(const AtomicSpectralMeasure& m, std::optional<double> threshold) {
  DoubleCriterion out;
  out.sum = accumulate(m, [](const SpectralAtom& a) { return a.mass / (a.divisor_alpha * a.divisor_beta); });
  out.threshold = threshold;
  if (threshold) {
    out.threshold_exceeded = out.sum.divergent || out.sum.value.lower() > *threshold;
  }
  return out;
}

std::vector<RateRow> cesaro_rate_profile(const SparseFourierSeries& f, const Irrational& alpha,
                                         const Irrational& beta, const std::vector<std::int64_t>& n_values) {
  const ErgodicSumEvaluator eval(f, alpha, beta);
  std::vector<RateRow> rows;
  rows.reserve(n_values.size());
  for (const std::int64_t n : n_values) {
    if (n < 1) throw ConfigError("cesaro_rate_profile: n must be positive, got " + std::to_string(n));
    RateRow row;
    row.n = n;
    row.norm = eval.double_sum_enclosure(n, n);
    const Interval nn = Interval::from_int(static_cast<long>(n));
    row.per_n = row.norm / nn;
    row.per_n2 = row.per_n / nn;
    rows.push_back(std::move(row));
  }
  return rows;
}

DoublingTriplingVariance doubling_tripling_variance(std::int64_t n) {
  if (n < 1) throw ConfigError("doubling_tripling_variance: n must be positive");
  if (n > 4096) throw ConfigError("doubling_tripling_variance: n above 4096 is outside the supported range");
  std::vector<mpz_class> products;
  products.reserve(static_cast<std::size_t>(n * n));
  mpz_class two_k = 1;
  for (std::int64_t k = 0; k < n; ++k, two_k *= 2) {
    mpz_class p = two_k;
    for (std::int64_t j = 0; j < n; ++j, p *= 3) products.push_back(p);
  }
  std::sort(products.begin(), products.end());

  // sum of squared multiplicities, each coefficient being 1/n.
  mpz_class squares = 0;
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < products.size();) {
    std::size_t j = i;
    while (j < products.size() && products[j] == products[i]) ++j;
    const mpz_class run = static_cast<unsigned long>(j - i);
    squares += run * run;
    ++distinct;
    i = j;
  }
  DoublingTriplingVariance out;
  out.products = products.size();
  out.distinct = distinct;
  out.value = mpq_class(squares, mpz_class(n) * n);
  out.value.canonicalize();
  return out;
}

}  // namespace coblab

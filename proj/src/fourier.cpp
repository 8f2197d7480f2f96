#include "coblab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "coblab/errors.hpp"

namespace coblab {

ComplexInterval ComplexInterval::from(std::complex<double> z, mpfr_prec_t prec) {
  return {Interval::from_double(z.real(), prec), Interval::from_double(z.imag(), prec)};
}

ComplexInterval ComplexInterval::real(const Interval& x) { return {x, Interval(x.precision())}; }

ComplexInterval ComplexInterval::unit_phase(const Interval& x) {
  const Interval twice = reduce_mod1(x) * 2L;
  return {cos_pi(twice), sin_pi(twice)};
}

Interval ComplexInterval::norm() const { return sqr(re) + sqr(im); }

Interval ComplexInterval::abs() const { return sqrt(norm()); }

ComplexInterval ComplexInterval::conj() const { return {re, -im}; }

double ComplexInterval::radius() const { return std::hypot(re.width(), im.width()); }

bool ComplexInterval::is_zero() const {
  return re.is_point() && im.is_point() && re.contains_zero() && im.contains_zero();
}

bool ComplexInterval::overlaps(const ComplexInterval& other) const {
  auto meet = [](const Interval& a, const Interval& b) {
    return !certainly_less(a, b) && !certainly_less(b, a);
  };
  return meet(re, other.re) && meet(im, other.im);
}

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re - b.re, a.im - b.im};
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexInterval operator*(const ComplexInterval& a, const Interval& k) { return {a.re * k, a.im * k}; }

// --- SparseFourierSeries -----------------------------------------------------

SparseFourierSeries SparseFourierSeries::single_mode(std::int64_t n, std::complex<double> c) {
  SparseFourierSeries out;
  out.set(n, ComplexInterval::from(c));
  return out;
}

SparseFourierSeries SparseFourierSeries::from_coefficients(
    const std::vector<std::pair<std::int64_t, std::complex<double>>>& c) {
  SparseFourierSeries out;
  for (const auto& [n, z] : c) {
    if (out.contains(n)) throw ConfigError("duplicate Fourier frequency " + std::to_string(n));
    out.set(n, ComplexInterval::from(z));
  }
  return out;
}

void SparseFourierSeries::set(std::int64_t n, ComplexInterval c) {
  if (c.is_zero()) {
    coeffs_.erase(n);
  } else {
    coeffs_.insert_or_assign(n, std::move(c));
  }
}

ComplexInterval SparseFourierSeries::coeff(std::int64_t n) const {
  const auto it = coeffs_.find(n);
  return it == coeffs_.end() ? ComplexInterval{} : it->second;
}

std::vector<std::int64_t> SparseFourierSeries::support() const {
  std::vector<std::int64_t> out;
  out.reserve(coeffs_.size());
  for (const auto& entry : coeffs_) out.push_back(entry.first);
  return out;
}

void SparseFourierSeries::mark_real_valued() {
  for (const auto& [n, c] : coeffs_) {
    if (!coeff(-n).overlaps(c.conj())) {
      throw std::invalid_argument("coefficients at " + std::to_string(n) + " and " + std::to_string(-n) +
                                  " are not conjugate");
    }
  }
  real_valued_ = true;
}

Interval SparseFourierSeries::l1_norm() const {
  Interval total(kCoefficientPrecision);
  for (const auto& entry : coeffs_) total += entry.second.abs();
  return total;
}

Interval SparseFourierSeries::l2_norm_squared() const {
  Interval total(kCoefficientPrecision);
  for (const auto& entry : coeffs_) total += entry.second.norm();
  return total;
}

namespace {

template <class Op>
SparseFourierSeries combine(const SparseFourierSeries& a, const SparseFourierSeries& b, Op op) {
  SparseFourierSeries out;
  std::set<std::int64_t> keys;
  for (const auto& entry : a.coefficients()) keys.insert(entry.first);
  for (const auto& entry : b.coefficients()) keys.insert(entry.first);
  for (const std::int64_t n : keys) out.set(n, op(a.coeff(n), b.coeff(n)));
  if (a.real_valued() && b.real_valued()) out.mark_real_valued();
  return out;
}

}  // namespace

SparseFourierSeries operator+(const SparseFourierSeries& a, const SparseFourierSeries& b) {
  return combine(a, b, [](const ComplexInterval& x, const ComplexInterval& y) { return x + y; });
}

SparseFourierSeries operator-(const SparseFourierSeries& a, const SparseFourierSeries& b) {
  return combine(a, b, [](const ComplexInterval& x, const ComplexInterval& y) { return x - y; });
}

SparseFourierSeries operator*(const SparseFourierSeries& f, const ComplexInterval& k) {
  SparseFourierSeries out;
  for (const auto& [n, c] : f.coefficients()) out.set(n, c * k);
  if (f.real_valued() && k.im.is_point() && k.im.contains_zero()) out.mark_real_valued();
  return out;
}

double max_relative_difference(const SparseFourierSeries& a, const SparseFourierSeries& b) {
  std::set<std::int64_t> keys;
  for (const auto& entry : a.coefficients()) keys.insert(entry.first);
  for (const auto& entry : b.coefficients()) keys.insert(entry.first);
  double worst = 0.0;
  for (const std::int64_t n : keys) {
    const std::complex<double> x = a.coeff(n).mid();
    const std::complex<double> y = b.coeff(n).mid();
    const double scale = std::max(std::abs(x), std::abs(y));
    if (scale > 0.0) worst = std::max(worst, std::abs(x - y) / scale);
  }
  return worst;
}

// --- rotation operators ------------------------------------------------------

namespace {

// 1 - e(x) = 2 sin^2(pi x) - i sin(2 pi x); no cancellation for small ||x||.
ComplexInterval one_minus_phase(const Interval& x) {
  const Interval y = reduce_mod1(x);
  const Interval s = sin_pi(y);
  return {sqr(s) * 2L, -sin_pi(y * 2L)};
}

// 1 / (1 - e(x)) = 1/2 + (i/2) cot(pi x), with |1 - e(x)| = 2 |sin(pi x)|.
// Empty when the sine enclosure cannot be separated from zero.
struct InverseFactor {
  ComplexInterval value;
  Interval divisor;
};

std::optional<InverseFactor> inverse_one_minus_phase(const Interval& x) {
  const Interval y = reduce_mod1(x);
  const Interval s = sin_pi(y);
  if (s.contains_zero()) return std::nullopt;
  const mpfr_prec_t prec = x.precision();
  const Interval half = Interval::from_mpq(mpq_class(1, 2), prec);
  return InverseFactor{{half, cos_pi(y) / (s * 2L)}, abs(s) * 2L};
}

// Runs `mode` over the support, doubling the precision while any divisor is
// unresolved. `mode` returns (coefficient, divisor) or nothing.
template <class Mode>
CoboundarySolution solve_adaptively(const SparseFourierSeries& f, const PrecisionPolicy& policy,
                                    const char* name, Mode mode) {
  if (!f.is_centered()) {
    throw ConfigError(std::string(name) + ": the constant Fourier coefficient must vanish");
  }
  CoboundarySolution out;
  for (mpfr_prec_t prec = policy.start; prec <= policy.cap; prec *= 2) {
    SparseFourierSeries series;
    std::vector<SmallDivisorRecord> records;
    bool resolved = true;
    for (const auto& [n, c] : f.coefficients()) {
      auto step = mode(n, c, prec);
      if (!step) {
        resolved = false;
        break;
      }
      auto& [value, divisor] = *step;
      records.push_back({n, divisor, value.abs()});
      series.set(n, std::move(value));
    }
    if (resolved) {
      if (f.real_valued()) series.mark_real_valued();
      out.series = std::move(series);
      out.report.records = std::move(records);
      out.report.precision_used = prec;
      return out;
    }
    out.report.divisor_encloses_zero = true;
    ++out.report.escalations;
  }
  throw PrecisionExhausted(std::string(name) + ": a small divisor stayed unresolved at " +
                           std::to_string(policy.cap) + " bits");
}

}  // namespace

ComplexInterval rotation_factor(const Irrational& alpha, std::int64_t n, mpfr_prec_t prec) {
  return ComplexInterval::unit_phase(alpha.enclose_multiple(static_cast<long>(n), prec));
}

SparseFourierSeries apply_rotation(const SparseFourierSeries& f, const Irrational& alpha) {
  SparseFourierSeries out;
  for (const auto& [n, c] : f.coefficients()) out.set(n, c * rotation_factor(alpha, n));
  if (f.real_valued()) out.mark_real_valued();
  return out;
}

SparseFourierSeries apply_coboundary(const SparseFourierSeries& f, const Irrational& alpha) {
  SparseFourierSeries out;
  for (const auto& [n, c] : f.coefficients()) {
    out.set(n, c * one_minus_phase(alpha.enclose_multiple(static_cast<long>(n), kCoefficientPrecision)));
  }
  if (f.real_valued()) out.mark_real_valued();
  return out;
}

CoboundarySolution solve_coboundary(const SparseFourierSeries& f, const Irrational& alpha,
                                    const PrecisionPolicy& policy) {
  return solve_adaptively(f, policy, "solve_coboundary",
                          [&](std::int64_t n, const ComplexInterval& c,
                              mpfr_prec_t prec) -> std::optional<std::pair<ComplexInterval, Interval>> {
                            auto inv = inverse_one_minus_phase(alpha.enclose_multiple(static_cast<long>(n), prec));
                            if (!inv) return std::nullopt;
                            return std::pair{c * inv->value, inv->divisor};
                          });
}

CoboundarySolution transfer_coefficients(const SparseFourierSeries& f, const Irrational& alpha,
                                         const Irrational& beta, const PrecisionPolicy& policy) {
  return solve_adaptively(
      f, policy, "transfer_coefficients",
      [&](std::int64_t n, const ComplexInterval& c,
          mpfr_prec_t prec) -> std::optional<std::pair<ComplexInterval, Interval>> {
        auto inv = inverse_one_minus_phase(beta.enclose_multiple(static_cast<long>(n), prec));
        if (!inv) return std::nullopt;
        const ComplexInterval numerator = one_minus_phase(alpha.enclose_multiple(static_cast<long>(n), prec));
        return std::pair{c * numerator * inv->value, inv->divisor};
      });
}

CoboundarySolution double_solve(const SparseFourierSeries& f, const Irrational& alpha, const Irrational& beta,
                                const PrecisionPolicy& policy) {
  return solve_adaptively(f, policy, "double_solve",
                          [&](std::int64_t n, const ComplexInterval& c,
                              mpfr_prec_t prec) -> std::optional<std::pair<ComplexInterval, Interval>> {
                            auto ia = inverse_one_minus_phase(alpha.enclose_multiple(static_cast<long>(n), prec));
                            auto ib = inverse_one_minus_phase(beta.enclose_multiple(static_cast<long>(n), prec));
                            if (!ia || !ib) return std::nullopt;
                            return std::pair{c * ia->value * ib->value, ia->divisor * ib->divisor};
                          });
}

// --- ergodic sums ------------------------------------------------------------

Interval dirichlet_kernel(std::int64_t n, const Interval& x) {
  if (n < 0) throw ConfigError("dirichlet_kernel: negative length " + std::to_string(n));
  const Interval y = reduce_mod1(x);
  const Interval s = abs(sin_pi(y));
  if (s.contains_zero()) throw std::domain_error("dirichlet_kernel: argument not separated from an integer");
  return abs(sin_pi(reduce_mod1(y * static_cast<long>(n)))) / s;
}

namespace {

// |sin(pi n y)| / s_y from a cached high-precision y; the product n*y is
// reduced before rounding to double so large n lose nothing.
double kernel_fast(std::int64_t n, const Interval& y, double sin_y) {
  const double r = reduce_mod1(y * static_cast<long>(n)).mid();
  return std::abs(std::sin(M_PI * r)) / sin_y;
}

}  // namespace

ErgodicSumEvaluator::ErgodicSumEvaluator(const SparseFourierSeries& f, const Irrational& alpha) {
  for (const auto& [nu, c] : f.coefficients()) {
    Mode m{nu, c.norm(), 0.0, alpha.enclose_multiple(static_cast<long>(nu)), Interval(), 0.0, 0.0};
    m.mass_mid = m.mass.mid();
    m.x_alpha = reduce_mod1(m.x_alpha);
    m.sin_alpha = std::abs(std::sin(M_PI * m.x_alpha.mid()));
    modes_.push_back(std::move(m));
  }
}

ErgodicSumEvaluator::ErgodicSumEvaluator(const SparseFourierSeries& f, const Irrational& alpha,
                                         const Irrational& beta)
    : ErgodicSumEvaluator(f, alpha) {
  has_beta_ = true;
  for (Mode& m : modes_) {
    m.x_beta = reduce_mod1(beta.enclose_multiple(static_cast<long>(m.nu)));
    m.sin_beta = std::abs(std::sin(M_PI * m.x_beta.mid()));
  }
}

double ErgodicSumEvaluator::browder(std::int64_t n) const {
  double total = 0.0;
  for (const Mode& m : modes_) {
    const double k = m.nu == 0 ? static_cast<double>(n) : kernel_fast(n, m.x_alpha, m.sin_alpha);
    total += m.mass_mid * k * k;
  }
  return std::sqrt(total);
}

double ErgodicSumEvaluator::double_sum(std::int64_t n, std::int64_t m_len) const {
  if (!has_beta_) throw std::logic_error("double_sum: evaluator built without a second rotation");
  double total = 0.0;
  for (const Mode& m : modes_) {
    const double ka = m.nu == 0 ? static_cast<double>(n) : kernel_fast(n, m.x_alpha, m.sin_alpha);
    const double kb = m.nu == 0 ? static_cast<double>(m_len) : kernel_fast(m_len, m.x_beta, m.sin_beta);
    total += m.mass_mid * ka * ka * kb * kb;
  }
  return std::sqrt(total);
}

Interval ErgodicSumEvaluator::browder_enclosure(std::int64_t n) const {
  Interval total(kCoefficientPrecision);
  for (const Mode& m : modes_) {
    const Interval k = m.nu == 0 ? Interval::from_int(static_cast<long>(n)) : dirichlet_kernel(n, m.x_alpha);
    total += m.mass * sqr(k);
  }
  return sqrt(total);
}

Interval ErgodicSumEvaluator::double_sum_enclosure(std::int64_t n, std::int64_t m_len) const {
  if (!has_beta_) throw std::logic_error("double_sum_enclosure: evaluator built without a second rotation");
  Interval total(kCoefficientPrecision);
  for (const Mode& m : modes_) {
    const Interval ka = m.nu == 0 ? Interval::from_int(static_cast<long>(n)) : dirichlet_kernel(n, m.x_alpha);
    const Interval kb =
        m.nu == 0 ? Interval::from_int(static_cast<long>(m_len)) : dirichlet_kernel(m_len, m.x_beta);
    total += m.mass * sqr(ka) * sqr(kb);
  }
  return sqrt(total);
}

double browder_sum_norm(const SparseFourierSeries& f, const Irrational& alpha, std::int64_t n) {
  return ErgodicSumEvaluator(f, alpha).browder(n);
}

double double_ergodic_sum_norm(const SparseFourierSeries& f, const Irrational& alpha, const Irrational& beta,
                               std::int64_t n, std::int64_t m) {
  return ErgodicSumEvaluator(f, alpha, beta).double_sum(n, m);
}

SparseFourierSeries random_centered_polynomial(std::mt19937_64& rng, std::int64_t radius) {
  if (radius < 1) throw ConfigError("random_centered_polynomial: radius must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::pair<std::int64_t, std::complex<double>>> coeffs;
  double norm2 = 0.0;
  for (std::int64_t k = -radius; k <= radius; ++k) {
    if (k == 0) continue;
    const std::complex<double> z(gauss(rng), gauss(rng));
    norm2 += std::norm(z);
    coeffs.emplace_back(k, z);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& entry : coeffs) entry.second *= scale;
  return SparseFourierSeries::from_coefficients(coeffs);
}

}  // namespace coblab

#pragma once

// Sparse Fourier calculus on the circle: rotation operators, small-divisor
// coboundary solvers and ergodic-sum norms through Dirichlet kernels.

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "coblab/diophantine.hpp"
#include "coblab/interval.hpp"
#include "coblab/irrational.hpp"

namespace coblab {

inline constexpr mpfr_prec_t kCoefficientPrecision = 128;

struct ComplexInterval {
  Interval re{kCoefficientPrecision};
  Interval im{kCoefficientPrecision};

  static ComplexInterval from(std::complex<double> z, mpfr_prec_t prec = kCoefficientPrecision);
  static ComplexInterval real(const Interval& x);

  /// e(x) = exp(2 pi i x).
  static ComplexInterval unit_phase(const Interval& x);

  Interval abs() const;
  /// |z|^2
  Interval norm() const;
  ComplexInterval conj() const;
  std::complex<double> mid() const { return {re.mid(), im.mid()}; }
  /// Upper bound on |z - mid()|.
  double radius() const;
  bool is_zero() const;
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool overlaps(const ComplexInterval& other) const;

  ComplexInterval operator-() const { return {-re, -im}; }
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const Interval& k);

/// Finitely supported Fourier series sum_n c_n z^n. Exact zero coefficients
/// are never stored; lookups outside the support return zero.
class SparseFourierSeries {
 public:
  using Coefficients = std::map<std::int64_t, ComplexInterval>;

  SparseFourierSeries() = default;

  static SparseFourierSeries single_mode(std::int64_t n, std::complex<double> c);
  static SparseFourierSeries from_coefficients(const std::vector<std::pair<std::int64_t, std::complex<double>>>& c);

  void set(std::int64_t n, ComplexInterval c);
  ComplexInterval coeff(std::int64_t n) const;
  const Coefficients& coefficients() const { return coeffs_; }
  std::vector<std::int64_t> support() const;
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }
  bool contains(std::int64_t n) const { return coeffs_.count(n) != 0; }

  /// No constant term.
  bool is_centered() const { return coeffs_.count(0) == 0; }

  bool real_valued() const { return real_valued_; }
  /// Validates conjugate symmetry; throws std::invalid_argument when it fails.
  void mark_real_valued();

  Interval l1_norm() const;
  Interval l2_norm_squared() const;
  Interval l2_norm() const { return sqrt(l2_norm_squared()); }

 private:
  Coefficients coeffs_;
  bool real_valued_ = false;
};

SparseFourierSeries operator+(const SparseFourierSeries& a, const SparseFourierSeries& b);
SparseFourierSeries operator-(const SparseFourierSeries& a, const SparseFourierSeries& b);
SparseFourierSeries operator*(const SparseFourierSeries& f, const ComplexInterval& k);

/// max over the joint support of |a_n - b_n| / max(|a_n|, |b_n|), on midpoints.
double max_relative_difference(const SparseFourierSeries& a, const SparseFourierSeries& b);

/// e(n alpha), computed from the reduced argument n alpha mod 1.
ComplexInterval rotation_factor(const Irrational& alpha, std::int64_t n, mpfr_prec_t prec = kCoefficientPrecision);

/// T_alpha f: c_n -> c_n e(n alpha).
SparseFourierSeries apply_rotation(const SparseFourierSeries& f, const Irrational& alpha);

/// (I - T_alpha) f: c_n -> c_n (1 - e(n alpha)).
SparseFourierSeries apply_coboundary(const SparseFourierSeries& f, const Irrational& alpha);

struct SmallDivisorRecord {
  std::int64_t n = 0;
  /// |1 - e(n x)| = 2 sin(pi ||n x||)
  Interval divisor;
  /// Magnitude of the resulting coefficient.
  Interval magnitude;
};

struct SmallDivisorReport {
  std::vector<SmallDivisorRecord> records;
  /// Set when some attempt met a divisor enclosure containing zero; the
  /// precision was then doubled until every divisor was certified nonzero.
  bool divisor_encloses_zero = false;
  mpfr_prec_t precision_used = kCoefficientPrecision;
  int escalations = 0;
};

struct CoboundarySolution {
  SparseFourierSeries series;
  SmallDivisorReport report;
};

/// g with (I - T_alpha) g = f: g_n = f_n / (1 - e(n alpha)). Requires a centered f.
CoboundarySolution solve_coboundary(const SparseFourierSeries& f, const Irrational& alpha,
                                    const PrecisionPolicy& policy = {});

/// g with (I - T_alpha) f = (I - T_beta) g: g_n = f_n (1 - e(n alpha)) / (1 - e(n beta)).
CoboundarySolution transfer_coefficients(const SparseFourierSeries& f, const Irrational& alpha,
                                         const Irrational& beta, const PrecisionPolicy& policy = {});

/// h with (I - T_alpha)(I - T_beta) h = f. The report's divisor is the product
/// |1 - e(n alpha)| |1 - e(n beta)|.
CoboundarySolution double_solve(const SparseFourierSeries& f, const Irrational& alpha, const Irrational& beta,
                                const PrecisionPolicy& policy = {});

/// |sum_{k<n} e(k x)| = |sin(pi n x) / sin(pi x)| for n >= 0 and an enclosure x
/// of a non-integer real, evaluated on reduced arguments.
Interval dirichlet_kernel(std::int64_t n, const Interval& x);

/// Caches reduced arguments nu*alpha, nu*beta per frequency so that sweeps
/// over n cost a few operations per (nu, n).
class ErgodicSumEvaluator {
 public:
  ErgodicSumEvaluator(const SparseFourierSeries& f, const Irrational& alpha);
  ErgodicSumEvaluator(const SparseFourierSeries& f, const Irrational& alpha, const Irrational& beta);

  /// || sum_{k<n} T_alpha^k f ||_2
  double browder(std::int64_t n) const;
  /// || sum_{k<n} sum_{j<m} T_alpha^k T_beta^j f ||_2
  double double_sum(std::int64_t n, std::int64_t m) const;

  Interval browder_enclosure(std::int64_t n) const;
  Interval double_sum_enclosure(std::int64_t n, std::int64_t m) const;

 private:
  struct Mode {
    std::int64_t nu;
    Interval mass;  // |f_nu|^2
    double mass_mid;
    Interval x_alpha;  // nu alpha mod 1
    Interval x_beta;   // nu beta mod 1
    double sin_alpha;  // |sin(pi x_alpha)|
    double sin_beta;
  };
  std::vector<Mode> modes_;
  bool has_beta_ = false;
};

double browder_sum_norm(const SparseFourierSeries& f, const Irrational& alpha, std::int64_t n);
double double_ergodic_sum_norm(const SparseFourierSeries& f, const Irrational& alpha, const Irrational& beta,
                               std::int64_t n, std::int64_t m);

/// Centered trigonometric polynomial with complex Gaussian coefficients on
/// 0 < |k| <= radius, scaled to unit l2 coefficient norm up to rounding.
SparseFourierSeries random_centered_polynomial(std::mt19937_64& rng, std::int64_t radius);

}  // namespace coblab

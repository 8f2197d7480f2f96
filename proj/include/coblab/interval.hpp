#pragma once

// Outward-rounded interval arithmetic over MPFR.
//
// Every operation returns an interval guaranteed to contain the exact result
// for any choice of real arguments inside the operand intervals. Binary
// operations run at the larger of the two operand precisions.

#include <mpfr.h>
#include <gmpxx.h>

#include <optional>
#include <string>

namespace coblab {

inline constexpr mpfr_prec_t kDefaultPrecision = 128;
inline constexpr mpfr_prec_t kMaxPrecision = 8192;

/// RAII owner of a single MPFR value.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }

  /// Scientific notation with `digits` significant digits, rounded in `rnd`.
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

 private:
  mpfr_t value_;
};

class Interval {
 public:
  /// The degenerate interval [0, 0].
  explicit Interval(mpfr_prec_t prec = kDefaultPrecision);

  static Interval from_int(long value, mpfr_prec_t prec = kDefaultPrecision);
  static Interval from_mpz(const mpz_class& value, mpfr_prec_t prec = kDefaultPrecision);
  static Interval from_mpq(const mpq_class& value, mpfr_prec_t prec = kDefaultPrecision);
  /// Doubles are exact binary values; the enclosure is a point at prec >= 53.
  static Interval from_double(double value, mpfr_prec_t prec = kDefaultPrecision);
  static Interval from_bounds(double lo, double hi, mpfr_prec_t prec = kDefaultPrecision);
  static Interval hull(const Interval& a, const Interval& b);
  static Interval pi(mpfr_prec_t prec = kDefaultPrecision);
  /// [0, +inf]
  static Interval nonnegative(mpfr_prec_t prec = kDefaultPrecision);
  static Interval positive_infinity(mpfr_prec_t prec = kDefaultPrecision);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  /// Lower endpoint rounded down to double.
  double lower() const { return lo_.to_double(MPFR_RNDD); }
  /// Upper endpoint rounded up to double.
  double upper() const { return hi_.to_double(MPFR_RNDU); }
  double mid() const;
  /// Upper bound on hi - lo.
  double width() const;
  /// Upper bound on width / |mid|; infinity when the interval touches zero.
  double relative_width() const;

  bool is_finite() const;
  bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
  bool contains_zero() const;
  bool contains(double value) const;
  bool contains(const mpq_class& value) const;
  bool contains(const Interval& inner) const;

  /// The same enclosure rounded outward to a different precision.
  Interval with_precision(mpfr_prec_t prec) const;

  /// "[lo, hi]" with outward-rounded decimal endpoints.
  std::string to_string(int digits = 20) const;

  Interval operator-() const;
  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

 private:
  BigFloat lo_;
  BigFloat hi_;

  friend Interval operator+(const Interval&, const Interval&);
  friend Interval operator-(const Interval&, const Interval&);
  friend Interval operator*(const Interval&, const Interval&);
  friend Interval operator/(const Interval&, const Interval&);
  friend Interval operator*(const Interval&, long);
  friend Interval operator*(const Interval&, const mpz_class&);
  friend Interval sqrt(const Interval&);
  friend Interval sqr(const Interval&);
  friend Interval abs(const Interval&);
  friend Interval log(const Interval&);
  friend Interval exp(const Interval&);
  friend Interval sin(const Interval&);
  friend Interval cos(const Interval&);
  friend Interval min(const Interval&, const Interval&);
  friend Interval max(const Interval&, const Interval&);
  friend Interval nearest_int_distance(const Interval&);
  friend Interval reduce_mod1(const Interval&);
  friend std::optional<mpz_class> exact_floor(const Interval&);
  friend Interval from_endpoints(BigFloat lo, BigFloat hi);
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
/// Throws std::domain_error when the divisor contains zero.
Interval operator/(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, long k);
Interval operator*(const Interval& a, const mpz_class& k);

Interval sqrt(const Interval& x);
Interval sqr(const Interval& x);
Interval abs(const Interval& x);
/// Throws std::domain_error unless x > 0.
Interval log(const Interval& x);
Interval exp(const Interval& x);
/// x^e for x > 0.
Interval pow(const Interval& x, const Interval& e);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval sin_pi(const Interval& x);
Interval cos_pi(const Interval& x);
Interval min(const Interval& a, const Interval& b);
Interval max(const Interval& a, const Interval& b);

/// Enclosure of ||x|| = distance from x to the nearest integer, clamped to [0, 1/2].
Interval nearest_int_distance(const Interval& x);
/// x - round(mid(x)); lies in about [-1/2, 1/2] and shares e(x) with x.
Interval reduce_mod1(const Interval& x);
/// floor(x) when every point of x has the same floor.
std::optional<mpz_class> exact_floor(const Interval& x);

Interval from_endpoints(BigFloat lo, BigFloat hi);

// Certified comparisons: true only when the relation holds for every pair of
// points drawn from the two enclosures.
bool certainly_less(const Interval& a, const Interval& b);
bool certainly_less_equal(const Interval& a, const Interval& b);
inline bool certainly_greater(const Interval& a, const Interval& b) { return certainly_less(b, a); }
inline bool certainly_greater_equal(const Interval& a, const Interval& b) {
  return certainly_less_equal(b, a);
}
bool certainly_positive(const Interval& a);

}  // namespace coblab

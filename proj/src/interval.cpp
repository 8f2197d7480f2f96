#include "coblab/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace coblab {

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(value_, prec);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int digits, mpfr_rnd_t rnd) const {
  if (mpfr_nan_p(value_)) return "nan";
  if (mpfr_inf_p(value_)) return mpfr_signbit(value_) ? "-inf" : "inf";
  if (mpfr_zero_p(value_)) return "0";
  mpfr_exp_t exponent = 0;
  char* raw = mpfr_get_str(nullptr, &exponent, 10, static_cast<size_t>(digits), value_, rnd);
  std::string mantissa(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mantissa.empty() && mantissa[0] == '-') {
    sign = "-";
    mantissa.erase(0, 1);
  }
  std::string out = sign + mantissa.substr(0, 1);
  if (mantissa.size() > 1) out += "." + mantissa.substr(1);
  out += "e" + std::to_string(static_cast<long>(exponent) - 1);
  return out;
}

namespace {

mpfr_prec_t joint_precision(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

// Replaces NaN endpoints (0 * inf and the like) by the widest safe bound.
void sanitize(BigFloat& lo, BigFloat& hi) {
  if (mpfr_nan_p(lo.get())) mpfr_set_inf(lo.get(), -1);
  if (mpfr_nan_p(hi.get())) mpfr_set_inf(hi.get(), 1);
}

}  // namespace

Interval from_endpoints(BigFloat lo, BigFloat hi) {
  sanitize(lo, hi);
  Interval out(std::max(lo.precision(), hi.precision()));
  out.lo_ = std::move(lo);
  out.hi_ = std::move(hi);
  return out;
}

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval Interval::from_int(long value, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_si(out.lo_.get(), value, MPFR_RNDD);
  mpfr_set_si(out.hi_.get(), value, MPFR_RNDU);
  return out;
}

Interval Interval::from_mpz(const mpz_class& value, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_z(out.lo_.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(out.hi_.get(), value.get_mpz_t(), MPFR_RNDU);
  return out;
}

Interval Interval::from_mpq(const mpq_class& value, mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_q(out.lo_.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(out.hi_.get(), value.get_mpq_t(), MPFR_RNDU);
  return out;
}

Interval Interval::from_double(double value, mpfr_prec_t prec) {
  return from_bounds(value, value, prec);
}

Interval Interval::from_bounds(double lo, double hi, mpfr_prec_t prec) {
  if (!(lo <= hi)) throw std::invalid_argument("Interval: lower bound exceeds upper bound");
  Interval out(prec);
  mpfr_set_d(out.lo_.get(), lo, MPFR_RNDD);
  mpfr_set_d(out.hi_.get(), hi, MPFR_RNDU);
  return out;
}

Interval Interval::hull(const Interval& a, const Interval& b) {
  Interval out(joint_precision(a, b));
  mpfr_min(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_const_pi(out.lo_.get(), MPFR_RNDD);
  mpfr_const_pi(out.hi_.get(), MPFR_RNDU);
  return out;
}

Interval Interval::nonnegative(mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_inf(out.hi_.get(), 1);
  return out;
}

Interval Interval::positive_infinity(mpfr_prec_t prec) {
  Interval out(prec);
  mpfr_set_inf(out.lo_.get(), 1);
  mpfr_set_inf(out.hi_.get(), 1);
  return out;
}

double Interval::mid() const {
  BigFloat sum(precision() + 1);
  mpfr_add(sum.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(sum.get(), sum.get(), 1, MPFR_RNDN);
  return sum.to_double();
}

double Interval::width() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w.to_double(MPFR_RNDU);
}

double Interval::relative_width() const {
  if (contains_zero()) return std::numeric_limits<double>::infinity();
  const double magnitude = std::min(std::fabs(lower()), std::fabs(upper()));
  return width() / magnitude;
}

bool Interval::is_finite() const {
  return mpfr_number_p(lo_.get()) != 0 && mpfr_number_p(hi_.get()) != 0;
}

bool Interval::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool Interval::contains(double value) const {
  return mpfr_cmp_d(lo_.get(), value) <= 0 && mpfr_cmp_d(hi_.get(), value) >= 0;
}

bool Interval::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_.get(), value.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_.get(), value.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return mpfr_lessequal_p(lo_.get(), inner.lo_.get()) &&
         mpfr_greaterequal_p(hi_.get(), inner.hi_.get());
}

Interval Interval::with_precision(mpfr_prec_t prec) const {
  Interval out(prec);
  mpfr_set(out.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(out.hi_.get(), hi_.get(), MPFR_RNDU);
  return out;
}

std::string Interval::to_string(int digits) const {
  return "[" + lo_.to_string(digits, MPFR_RNDD) + ", " + hi_.to_string(digits, MPFR_RNDU) + "]";
}

Interval Interval::operator-() const {
  Interval out(precision());
  mpfr_neg(out.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(out.hi_.get(), lo_.get(), MPFR_RNDU);
  return out;
}

Interval& Interval::operator+=(const Interval& rhs) { return *this = *this + rhs; }
Interval& Interval::operator-=(const Interval& rhs) { return *this = *this - rhs; }
Interval& Interval::operator*=(const Interval& rhs) { return *this = *this * rhs; }
Interval& Interval::operator/=(const Interval& rhs) { return *this = *this / rhs; }

Interval operator+(const Interval& a, const Interval& b) {
  Interval out(joint_precision(a, b));
  mpfr_add(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  sanitize(out.lo_, out.hi_);
  return out;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval out(joint_precision(a, b));
  mpfr_sub(out.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(out.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  sanitize(out.lo_, out.hi_);
  return out;
}

Interval operator*(const Interval& a, const Interval& b) {
  const mpfr_prec_t prec = joint_precision(a, b);
  Interval out(prec);
  BigFloat lo(prec);
  BigFloat hi(prec);
  BigFloat t(prec);
  bool first = true;
  for (mpfr_srcptr x : {a.lo_.get(), a.hi_.get()}) {
    for (mpfr_srcptr y : {b.lo_.get(), b.hi_.get()}) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (mpfr_nan_p(t.get())) mpfr_set_zero(t.get(), 1);  // 0 * inf
      if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (mpfr_nan_p(t.get())) mpfr_set_zero(t.get(), 1);
      if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  out.lo_ = std::move(lo);
  out.hi_ = std::move(hi);
  return out;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("Interval division: divisor encloses zero");
  const mpfr_prec_t prec = joint_precision(a, b);
  BigFloat lo(prec);
  BigFloat hi(prec);
  BigFloat t(prec);
  bool first = true;
  for (mpfr_srcptr x : {a.lo_.get(), a.hi_.get()}) {
    for (mpfr_srcptr y : {b.lo_.get(), b.hi_.get()}) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), lo.get())) mpfr_set(lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), hi.get())) mpfr_set(hi.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return from_endpoints(std::move(lo), std::move(hi));
}

Interval operator*(const Interval& a, long k) {
  Interval out(a.precision());
  if (k >= 0) {
    mpfr_mul_si(out.lo_.get(), a.lo_.get(), k, MPFR_RNDD);
    mpfr_mul_si(out.hi_.get(), a.hi_.get(), k, MPFR_RNDU);
  } else {
    mpfr_mul_si(out.lo_.get(), a.hi_.get(), k, MPFR_RNDD);
    mpfr_mul_si(out.hi_.get(), a.lo_.get(), k, MPFR_RNDU);
  }
  sanitize(out.lo_, out.hi_);
  return out;
}

Interval operator*(const Interval& a, const mpz_class& k) {
  Interval out(a.precision());
  if (sgn(k) >= 0) {
    mpfr_mul_z(out.lo_.get(), a.lo_.get(), k.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(out.hi_.get(), a.hi_.get(), k.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(out.lo_.get(), a.hi_.get(), k.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(out.hi_.get(), a.lo_.get(), k.get_mpz_t(), MPFR_RNDU);
  }
  sanitize(out.lo_, out.hi_);
  return out;
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.hi_.get()) < 0) throw std::domain_error("Interval sqrt of a negative interval");
  Interval out(x.precision());
  if (mpfr_sgn(x.lo_.get()) <= 0) {
    mpfr_set_zero(out.lo_.get(), 1);
  } else {
    mpfr_sqrt(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
  }
  mpfr_sqrt(out.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return out;
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo_.get()) >= 0) return x;
  if (mpfr_sgn(x.hi_.get()) <= 0) return -x;
  Interval out(x.precision());
  mpfr_set_zero(out.lo_.get(), 1);
  mpfr_neg(out.hi_.get(), x.lo_.get(), MPFR_RNDU);
  mpfr_max(out.hi_.get(), out.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return out;
}

Interval sqr(const Interval& x) {
  const Interval m = abs(x);
  Interval out(x.precision());
  mpfr_sqr(out.lo_.get(), m.lo_.get(), MPFR_RNDD);
  mpfr_sqr(out.hi_.get(), m.hi_.get(), MPFR_RNDU);
  return out;
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo_.get()) <= 0) throw std::domain_error("Interval log of a non-positive interval");
  Interval out(x.precision());
  mpfr_log(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_log(out.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return out;
}

Interval exp(const Interval& x) {
  Interval out(x.precision());
  mpfr_exp(out.lo_.get(), x.lo_.get(), MPFR_RNDD);
  mpfr_exp(out.hi_.get(), x.hi_.get(), MPFR_RNDU);
  return out;
}

Interval pow(const Interval& x, const Interval& e) { return exp(e * log(x)); }

namespace {

// True when some integer may lie in t (conservative).
bool may_contain_integer(const Interval& t) {
  BigFloat c(t.precision());
  mpfr_ceil(c.get(), t.lo().get());
  return mpfr_lessequal_p(c.get(), t.hi().get()) != 0;
}

// Enclosure of fn over x for a 2*pi periodic fn with maxima at max_offset + 2k*pi
// and minima at min_offset + 2k*pi (offsets in units of pi).
template <typename Fn>
Interval periodic_trig(const Interval& x, Fn fn, long max_offset_halves, long min_offset_halves) {
  const mpfr_prec_t prec = x.precision();
  if (!x.is_finite() || x.width() >= 6.0) return Interval::from_bounds(-1.0, 1.0, prec);
  BigFloat lo(prec);
  BigFloat hi(prec);
  BigFloat t(prec);
  fn(lo.get(), x.lo().get(), MPFR_RNDD);
  fn(t.get(), x.hi().get(), MPFR_RNDD);
  mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
  fn(hi.get(), x.lo().get(), MPFR_RNDU);
  fn(t.get(), x.hi().get(), MPFR_RNDU);
  mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);

  const Interval pi = Interval::pi(prec);
  const Interval two_pi = pi * 2L;
  const Interval half_pi = pi / Interval::from_int(2, prec);
  const Interval to_max = (x - half_pi * max_offset_halves) / two_pi;
  const Interval to_min = (x - half_pi * min_offset_halves) / two_pi;
  if (may_contain_integer(to_max)) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
  if (may_contain_integer(to_min)) mpfr_set_si(lo.get(), -1, MPFR_RNDD);
  // Guard against rounding outside [-1, 1].
  if (mpfr_cmp_si(lo.get(), -1) < 0) mpfr_set_si(lo.get(), -1, MPFR_RNDD);
  if (mpfr_cmp_si(hi.get(), 1) > 0) mpfr_set_si(hi.get(), 1, MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

}  // namespace

Interval sin(const Interval& x) {
  // maxima at pi/2, minima at -pi/2
  return periodic_trig(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_sin(r, a, rnd); }, 1, -1);
}

Interval cos(const Interval& x) {
  // maxima at 0, minima at pi
  return periodic_trig(x, [](mpfr_ptr r, mpfr_srcptr a, mpfr_rnd_t rnd) { mpfr_cos(r, a, rnd); }, 0, 2);
}

Interval sin_pi(const Interval& x) { return sin(Interval::pi(x.precision()) * x); }
Interval cos_pi(const Interval& x) { return cos(Interval::pi(x.precision()) * x); }

Interval min(const Interval& a, const Interval& b) {
  Interval out(joint_precision(a, b));
  mpfr_min(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_min(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return out;
}

Interval max(const Interval& a, const Interval& b) {
  Interval out(joint_precision(a, b));
  mpfr_max(out.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_max(out.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return out;
}

Interval reduce_mod1(const Interval& x) {
  const mpfr_prec_t prec = x.precision();
  BigFloat center(prec + 1);
  mpfr_add(center.get(), x.lo_.get(), x.hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(center.get(), center.get(), 1, MPFR_RNDN);
  mpfr_rint(center.get(), center.get(), MPFR_RNDN);
  mpz_class k;
  mpfr_get_z(k.get_mpz_t(), center.get(), MPFR_RNDN);
  return x - Interval::from_mpz(k, prec);
}

Interval nearest_int_distance(const Interval& x) {
  const mpfr_prec_t prec = x.precision();
  if (!x.is_finite() || x.width() >= 0.5) return Interval::from_bounds(0.0, 0.5, prec);

  // Shift so the lower endpoint sits in [-1/2, 1/2]; the upper one then lies below 1.
  BigFloat k(prec);
  mpfr_rint(k.get(), x.lo_.get(), MPFR_RNDN);
  mpz_class shift;
  mpfr_get_z(shift.get_mpz_t(), k.get(), MPFR_RNDN);
  const Interval y = x - Interval::from_mpz(shift, prec);

  // ||t|| = |t| for t <= 1/2 and 1 - t above; evaluate at both endpoints
  // with directed rounding, then add the interior extremes 0 and 1/2.
  auto distance_at = [prec](mpfr_srcptr t, mpfr_rnd_t rnd) {
    BigFloat out(prec);
    if (mpfr_cmp_d(t, 0.5) <= 0) {
      mpfr_abs(out.get(), t, rnd);
    } else {
      mpfr_ui_sub(out.get(), 1, t, rnd);
    }
    return out;
  };
  BigFloat lo = distance_at(y.lo_.get(), MPFR_RNDD);
  BigFloat hi = distance_at(y.lo_.get(), MPFR_RNDU);
  BigFloat lo2 = distance_at(y.hi_.get(), MPFR_RNDD);
  BigFloat hi2 = distance_at(y.hi_.get(), MPFR_RNDU);
  mpfr_min(lo.get(), lo.get(), lo2.get(), MPFR_RNDD);
  mpfr_max(hi.get(), hi.get(), hi2.get(), MPFR_RNDU);
  if (mpfr_sgn(y.lo_.get()) <= 0 && mpfr_sgn(y.hi_.get()) >= 0) mpfr_set_zero(lo.get(), 1);
  if (mpfr_cmp_d(y.lo_.get(), 0.5) <= 0 && mpfr_cmp_d(y.hi_.get(), 0.5) >= 0) {
    mpfr_set_d(hi.get(), 0.5, MPFR_RNDU);
  }
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  if (mpfr_cmp_d(hi.get(), 0.5) > 0) mpfr_set_d(hi.get(), 0.5, MPFR_RNDU);
  return from_endpoints(std::move(lo), std::move(hi));
}

std::optional<mpz_class> exact_floor(const Interval& x) {
  if (!x.is_finite()) return std::nullopt;
  BigFloat a(x.precision());
  BigFloat b(x.precision());
  mpfr_floor(a.get(), x.lo_.get());
  mpfr_floor(b.get(), x.hi_.get());
  if (!mpfr_equal_p(a.get(), b.get())) return std::nullopt;
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), a.get(), MPFR_RNDN);
  return out;
}

bool certainly_less(const Interval& a, const Interval& b) {
  return mpfr_less_p(a.hi().get(), b.lo().get()) != 0;
}

bool certainly_less_equal(const Interval& a, const Interval& b) {
  return mpfr_lessequal_p(a.hi().get(), b.lo().get()) != 0;
}

bool certainly_positive(const Interval& a) { return mpfr_sgn(a.lo().get()) > 0; }

}  // namespace coblab

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "coblab/interval.hpp"

namespace coblab {

/// A real quadratic irrational (a + b*sqrt(d)) / c.
///
/// Canonical form: b != 0, c > 0, d > 1 squarefree, gcd(a, b, c) = 1. Sign,
/// floor and comparison against rationals are decided exactly.
class Irrational {
 public:
  /// Canonicalizes; a non-squarefree d has its square part moved into b.
  /// Throws ConfigError when d is a perfect square, d < 2, b == 0 or c == 0.
  static Irrational make(mpz_class a, mpz_class b, mpz_class d, mpz_class c, std::string label = {});

  /// Parses expressions such as "(a+b*sqrt(d))/c", "sqrt(2)-1" or
  /// "(2*sqrt(2)-1)/3". Throws ConfigError on malformed input.
  static Irrational parse(std::string_view text);

  const mpz_class& a() const { return a_; }
  const mpz_class& b() const { return b_; }
  const mpz_class& c() const { return c_; }
  const mpz_class& d() const { return d_; }
  const std::string& label() const { return label_; }
  Irrational with_label(std::string label) const;

  /// Canonical "(a+b*sqrt(d))/c".
  std::string to_string() const;
  double approx() const;

  Interval enclose(mpfr_prec_t prec = kDefaultPrecision) const;
  /// Enclosure of q * x, formed from the exact numerator so the width scales with q only.
  Interval enclose_multiple(const mpz_class& q, mpfr_prec_t prec = kDefaultPrecision) const;
  Interval enclose_multiple(long q, mpfr_prec_t prec = kDefaultPrecision) const {
    return enclose_multiple(mpz_class(q), prec);
  }

  int sign() const;
  /// Sign of x - r, exact.
  int compare(const mpq_class& r) const;
  mpz_class floor() const;

  Irrational operator-() const;
  Irrational operator+(const mpq_class& r) const;
  Irrational operator-(const mpq_class& r) const { return *this + mpq_class(-r); }
  /// Throws ConfigError for r == 0.
  Irrational operator*(const mpq_class& r) const;
  Irrational reciprocal() const;

  bool operator==(const Irrational& other) const {
    return a_ == other.a_ && b_ == other.b_ && c_ == other.c_ && d_ == other.d_;
  }

 private:
  Irrational() = default;

  mpz_class a_;
  mpz_class b_;
  mpz_class c_;
  mpz_class d_;
  std::string label_;
};

/// Sign of u + b*sqrt(d) for rational u, integer b and non-square d > 0.
int sign_of_surd(const mpq_class& u, const mpz_class& b, const mpz_class& d);

}  // namespace coblab

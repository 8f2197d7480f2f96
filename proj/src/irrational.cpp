#include "coblab/irrational.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <utility>

#include "coblab/errors.hpp"

namespace coblab {

int sign_of_surd(const mpq_class& u, const mpz_class& b, const mpz_class& d) {
  const int su = sgn(u);
  const int sb = sgn(b);
  if (sb == 0) return su;
  if (su == 0) return sb;
  if (su == sb) return su;
  // Opposite signs: compare u^2 with b^2 d; equality is impossible for non-square d.
  const mpq_class lhs = u * u;
  const mpq_class rhs = mpq_class(b * b * d);
  return cmp(lhs, rhs) > 0 ? su : sb;
}

Irrational Irrational::make(mpz_class a, mpz_class b, mpz_class d, mpz_class c, std::string label) {
  if (d < 2) throw ConfigError("surd radicand must be at least 2, got " + d.get_str());
  if (mpz_perfect_square_p(d.get_mpz_t())) {
    throw ConfigError("surd radicand " + d.get_str() + " is a perfect square");
  }
  if (b == 0) throw ConfigError("surd coefficient of sqrt must be nonzero");
  if (c == 0) throw ConfigError("surd denominator must be nonzero");

  // Move square factors of d into b.
  mpz_class rest = d;
  for (mpz_class p = 2; p * p <= rest; ++p) {
    const mpz_class p2 = p * p;
    while (rest % p2 == 0) {
      rest /= p2;
      b *= p;
    }
  }
  if (c < 0) {
    a = -a;
    b = -b;
    c = -c;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1) {
    a /= g;
    b /= g;
    c /= g;
  }
  Irrational out;
  out.a_ = std::move(a);
  out.b_ = std::move(b);
  out.c_ = std::move(c);
  out.d_ = std::move(rest);
  out.label_ = std::move(label);
  return out;
}

namespace {

// r + s*sqrt(d) during parsing; d is unset while s == 0.
struct Quadratic {
  mpq_class r;
  mpq_class s;
  std::optional<mpz_class> d;
};

class SurdParser {
 public:
  explicit SurdParser(std::string_view text) : text_(text) {}

  Quadratic parse() {
    Quadratic value = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("invalid surd \"" + std::string(text_) + "\": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Quadratic add(Quadratic x, const Quadratic& y, int sign) {
    if (x.d && y.d && *x.d != *y.d) fail("mixes different square roots");
    x.r += sign * y.r;
    x.s += sign * y.s;
    if (!x.d) x.d = y.d;
    return x;
  }

  Quadratic multiply(const Quadratic& x, const Quadratic& y) {
    const bool x_rational = sgn(x.s) == 0;
    const bool y_rational = sgn(y.s) == 0;
    if (!x_rational && !y_rational) fail("product of two irrational terms");
    const Quadratic& q = x_rational ? y : x;
    const mpq_class& k = x_rational ? x.r : y.r;
    return Quadratic{q.r * k, q.s * k, q.d};
  }

  Quadratic divide(const Quadratic& x, const Quadratic& y) {
    if (sgn(y.s) != 0) fail("division by an irrational term");
    if (sgn(y.r) == 0) fail("division by zero");
    return Quadratic{x.r / y.r, x.s / y.r, x.d};
  }

  Quadratic expression() {
    Quadratic value = term();
    while (true) {
      if (accept('+')) {
        value = add(std::move(value), term(), 1);
      } else if (accept('-')) {
        value = add(std::move(value), term(), -1);
      } else {
        return value;
      }
    }
  }

  Quadratic term() {
    Quadratic value = factor();
    while (true) {
      if (accept('*')) {
        value = multiply(value, factor());
      } else if (accept('/')) {
        value = divide(value, factor());
      } else {
        return value;
      }
    }
  }

  mpz_class integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Quadratic factor() {
    if (accept('-')) {
      Quadratic v = factor();
      return Quadratic{-v.r, -v.s, v.d};
    }
    if (accept('+')) return factor();
    if (accept('(')) {
      Quadratic v = expression();
      expect(')');
      return v;
    }
    skip_space();
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      expect('(');
      const mpz_class d = integer();
      expect(')');
      if (d < 2) fail("radicand must be at least 2");
      if (mpz_perfect_square_p(d.get_mpz_t())) fail("radicand " + d.get_str() + " is a perfect square");
      return Quadratic{0, 1, d};
    }
    return Quadratic{mpq_class(integer()), 0, std::nullopt};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Irrational Irrational::parse(std::string_view text) {
  const Quadratic q = SurdParser(text).parse();
  if (sgn(q.s) == 0 || !q.d) {
    throw ConfigError("invalid surd \"" + std::string(text) + "\": value is rational");
  }
  // r + s sqrt(d) over the common denominator.
  mpz_class c;
  mpz_lcm(c.get_mpz_t(), q.r.get_den_mpz_t(), q.s.get_den_mpz_t());
  const mpq_class ra = q.r * c;
  const mpq_class sb = q.s * c;
  return make(ra.get_num(), sb.get_num(), *q.d, c);
}

Irrational Irrational::with_label(std::string label) const {
  Irrational out = *this;
  out.label_ = std::move(label);
  return out;
}

std::string Irrational::to_string() const {
  std::string out = "(" + a_.get_str();
  out += (b_ < 0 ? "-" : "+");
  mpz_class mag = abs(b_);
  out += mag.get_str() + "*sqrt(" + d_.get_str() + "))/" + c_.get_str();
  return out;
}

double Irrational::approx() const {
  return (a_.get_d() + b_.get_d() * std::sqrt(d_.get_d())) / c_.get_d();
}

Interval Irrational::enclose(mpfr_prec_t prec) const { return enclose_multiple(mpz_class(1), prec); }

Interval Irrational::enclose_multiple(const mpz_class& q, mpfr_prec_t prec) const {
  const Interval root = sqrt(Interval::from_mpz(d_, prec));
  const Interval numerator = Interval::from_mpz(q * a_, prec) + root * mpz_class(q * b_);
  return numerator / Interval::from_mpz(c_, prec);
}

int Irrational::sign() const { return sign_of_surd(mpq_class(a_), b_, d_); }

int Irrational::compare(const mpq_class& r) const {
  // (a + b sqrt d)/c - r has the sign of (a - r c) + b sqrt d since c > 0.
  const mpq_class shifted = mpq_class(a_) - r * c_;
  return sign_of_surd(shifted, b_, d_);
}

mpz_class Irrational::floor() const {
  mpz_class m(std::floor(approx()));
  while (compare(mpq_class(m)) < 0) --m;
  while (compare(mpq_class(m + 1)) >= 0) ++m;
  return m;
}

Irrational Irrational::operator-() const { return make(-a_, -b_, d_, c_, label_.empty() ? "" : "-" + label_); }

Irrational Irrational::operator+(const mpq_class& r) const {
  const mpz_class& u = r.get_num();
  const mpz_class& v = r.get_den();
  return make(a_ * v + u * c_, b_ * v, d_, c_ * v);
}

Irrational Irrational::operator*(const mpq_class& r) const {
  if (sgn(r) == 0) throw ConfigError("scaling an irrational by zero");
  const mpz_class& u = r.get_num();
  const mpz_class& v = r.get_den();
  return make(a_ * u, b_ * u, d_, c_ * v);
}

Irrational Irrational::reciprocal() const {
  const mpz_class norm = a_ * a_ - b_ * b_ * d_;
  return make(c_ * a_, -c_ * b_, d_, norm);
}

}  // namespace coblab

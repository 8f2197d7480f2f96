#include "coblab/shift_example.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coblab/errors.hpp"

namespace coblab {

namespace {

Interval num(double x) { return Interval::from_double(x); }
Interval num(std::int64_t x) { return Interval::from_int(static_cast<long>(x)); }

Interval upper_abs(const Interval& x) { return Interval::from_double(std::max(std::fabs(x.lower()), std::fabs(x.upper()))); }

// Number of (j, k) in [1, J] x [1, K] with j + k = s.
std::int64_t diagonal_count(std::int64_t s, std::int64_t J, std::int64_t K) {
  return std::max<std::int64_t>(0, std::min({s - 1, J, K, J + K + 1 - s}));
}

void require_positive(std::int64_t v, const char* name) {
  if (v < 1) throw ConfigError(std::string(name) + " must be a positive integer");
}

// Enclosure of sum_{s >= S} (s - 1) s^(-e) for e > 2, from
// sum_{s >= S} s^(-c) in [S^(1-c), (S-1)^(1-c)] / (c - 1).
Interval power_weighted_tail(const Interval& e, std::int64_t S) {
  const Interval one = num(1.0);
  const Interval two = num(2.0);
  const Interval s = num(S);
  const Interval s1 = num(S - 1);
  const Interval lo = pow(s, two - e) / (e - two) - pow(s1, one - e) / (e - one);
  const Interval hi = pow(s1, two - e) / (e - two) - pow(s, one - e) / (e - one);
  return Interval::hull(lo, hi);
}

// Upper bound on sum_{s >= S} (s - 1) s^(-2p) log(s)^(-2p), S >= 3, through
// x^(1-2p) log(x)^(-2p) <= ((S-1) log(S-1))^(2-2p) / (x log(x)^2) for x >= S - 1.
Interval log_power_weighted_tail(double p, std::int64_t S) {
  const Interval x = num(S - 1);
  const Interval lx = log(x);
  return pow(x * lx, num(2.0 - 2.0 * p)) / lx;
}

// Upper bound on zeta(c) for c > 1.
Interval zeta_upper(const Interval& c) {
  constexpr std::int64_t M = 1000;
  Interval sum(kDefaultPrecision);
  for (std::int64_t m = M; m >= 1; --m) sum += pow(num(m), -c);
  const Interval one = num(1.0);
  return sum + pow(num(M), one - c) / (c - one);
}

}  // namespace

Interval LatticeFunction::at_diagonal(std::int64_t s, mpfr_prec_t prec) const {
  if (s < 2) throw ConfigError("lattice diagonal index must be at least 2");
  const Interval x = Interval::from_int(static_cast<long>(s), prec);
  if (kind == Kind::power) {
    return pow(x, -(Interval::from_double(a, prec) / Interval::from_double(p, prec)));
  }
  return Interval::from_int(1, prec) / sqr(x * log(x));
}

double LatticeFunction::value(std::int64_t j, std::int64_t k) const {
  const double s = static_cast<double>(j + k);
  if (kind == Kind::power) return std::pow(s, -a / p);
  const double l = std::log(s);
  return 1.0 / (s * s * l * l);
}

LatticeFunction build_h(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("p must be a finite real >= 1");
  if (p == 1.0) return {LatticeFunction::Kind::log_power, 1.0, 2.0};
  return {LatticeFunction::Kind::power, p, p + 1.0};
}

LpNorm lp_partial_norm(const LatticeFunction& f, double p, std::int64_t J, std::int64_t K) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("p must be a finite real >= 1");
  require_positive(J, "J");
  require_positive(K, "K");
  const Interval P = num(p);
  Interval partial(kDefaultPrecision);
  Interval diagonal_sum(kDefaultPrecision);
  for (std::int64_t s = J + K; s >= 2; --s) {
    const Interval g = p == 1.0 ? f.at_diagonal(s) : pow(f.at_diagonal(s), P);
    partial += g * static_cast<long>(diagonal_count(s, J, K));
    diagonal_sum += g * static_cast<long>(s - 1);
  }

  LpNorm out{partial, Interval::positive_infinity(), Interval::hull(diagonal_sum, Interval::positive_infinity())};
  const std::int64_t S = J + K + 1;
  if (f.kind == LatticeFunction::Kind::power) {
    const Interval e = P * num(f.a) / num(f.p);
    if (!certainly_greater(e, num(2.0))) return out;
    out.tail_bound = Interval::from_double(power_weighted_tail(e, J + 2).upper()) +
                     Interval::from_double(power_weighted_tail(e, K + 2).upper());
    out.total = diagonal_sum + power_weighted_tail(e, S);
  } else {
    out.tail_bound = log_power_weighted_tail(p, J + 2) + log_power_weighted_tail(p, K + 2);
    out.total = Interval::hull(diagonal_sum, diagonal_sum + log_power_weighted_tail(p, S));
  }
  return out;
}

Interval log_power_majorant(std::int64_t J) {
  require_positive(J, "J");
  Interval sum(kDefaultPrecision);
  for (std::int64_t j = J; j >= 1; --j) sum += num(1.0) / (num(j) * sqr(log(num(j + 1))));
  return sum;
}

QGrid build_q(const LatticeFunction& f, std::int64_t J, std::int64_t K, std::int64_t tail_terms) {
  require_positive(J, "J");
  require_positive(K, "K");
  if (tail_terms < 0) throw ConfigError("tail_terms must be nonnegative");
  const std::int64_t last_stored = J + K;
  const std::int64_t N = last_stored + tail_terms;

  QGrid grid;
  grid.J = J;
  grid.K = K;
  const Interval one = num(1.0);
  if (f.kind == LatticeFunction::Kind::power) {
    // sum_{n > N} n^(-b) in [(N+1)^(1-b), N^(1-b)] / (b - 1).
    const Interval b = num(f.a) / num(f.p);
    grid.tail = Interval::hull(pow(num(N + 1), one - b) / (b - one), pow(num(N), one - b) / (b - one));
  } else {
    // d/dx [-1 / (x log^2 x)] = (1 + 2 / log x) / (x^2 log^2 x).
    const Interval T = num(N + 1);
    const Interval lT = log(T);
    const Interval lo = one / (T * sqr(lT)) / (one + num(2.0) / lT);
    const Interval hi = one / (num(N) * sqr(log(num(N))));
    grid.tail = Interval::hull(lo, hi);
  }

  grid.by_diagonal.assign(static_cast<std::size_t>(last_stored - 1), Interval(kDefaultPrecision));
  Interval q = grid.tail;
  for (std::int64_t n = N; n >= 2; --n) {
    q += f.at_diagonal(n);
    if (n <= last_stored) grid.by_diagonal[static_cast<std::size_t>(n - 2)] = q;
  }

  bool ok = true;
  if (f.kind == LatticeFunction::Kind::power) {
    const Interval P = num(f.p);
    const Interval inv = -(one / P);
    const Interval shrink = one - num(kShiftEpsilon);
    for (std::int64_t s = 2; s <= last_stored && ok; ++s) {
      const Interval& v = grid.diagonal(s);
      ok = certainly_less_equal(P * pow(num(s), inv) * shrink, v) && certainly_less_equal(v, P * pow(num(s - 1), inv));
    }
  } else {
    for (std::int64_t s = 2; s <= last_stored && ok; ++s) ok = certainly_less_equal(grid.diagonal(s), one / num(s - 1));
  }
  grid.bounds_certified = ok;
  return grid;
}

double roundtrip_residual(const QGrid& q, const LatticeFunction& f) {
  double worst = 0.0;
  for (std::int64_t s = 2; s + 2 <= q.J + q.K; ++s) {
    const Interval lhs = q.diagonal(s) - q.diagonal(s + 1) * 2L + q.diagonal(s + 2);
    const Interval rhs = f.at_diagonal(s) - f.at_diagonal(s + 1);
    worst = std::max(worst, upper_abs(lhs - rhs).upper());
  }
  return worst;
}

std::int64_t log_power_threshold() {
  static const std::int64_t threshold = [] {
    for (std::int64_t n = 55;; ++n) {
      const Interval x = num(n);
      if (certainly_greater_equal(sqrt(x), sqr(log(x)))) return n;
    }
  }();
  return threshold;
}

Interval row_sum_lower_bound(double p, std::int64_t K) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("row-sum bound needs a finite p > 1");
  require_positive(K, "K");
  Interval harmonic(kDefaultPrecision);
  for (std::int64_t k = K; k >= 1; --k) harmonic += num(1.0) / num(k + 1);
  const Interval P = num(p);
  return pow(P * (num(1.0) - num(kShiftEpsilon)), P) * harmonic;
}

Certificate divergence_certificate(double p, std::int64_t K, double r) {
  const LatticeFunction f = build_h(p);
  require_positive(K, "K");
  if (r <= 0.0) r = 2.0 * p + 1.0;
  if (!std::isfinite(r)) throw ConfigError("r must be finite");

  Certificate cert;
  cert.kind = CertificateKind::divergence_witness;
  cert.title = "q = sum_n V^n h leaves l_p";
  const Interval one = num(1.0);
  const Interval P = num(p);
  const Interval R = num(r);
  cert.report("p", P);
  cert.report("K", num(K));
  cert.report("r", R);

  std::int64_t J = K;
  std::int64_t J0 = 0;
  if (f.kind == LatticeFunction::Kind::log_power) {
    J0 = log_power_threshold();
    J = J0 + K;
  }
  const QGrid grid = build_q(f, J, K);

  if (f.kind == LatticeFunction::Kind::power) {
    const Interval inv = -(one / P);
    const Interval shrink = one - num(kShiftEpsilon);
    Interval lower_ratio = Interval::positive_infinity();
    Interval upper_ratio(kDefaultPrecision);
    for (std::int64_t s = 2; s <= grid.J + grid.K; ++s) {
      const Interval& v = grid.diagonal(s);
      lower_ratio = min(lower_ratio, v / (P * pow(num(s), inv) * shrink));
      upper_ratio = max(upper_ratio, v / (P * pow(num(s - 1), inv)));
    }
    cert.add("min_s q(s) / (p s^(-1/p) (1-eps))", lower_ratio, Comparison::greater_equal, one);
    cert.add("max_s q(s) / (p (s-1)^(-1/p))", upper_ratio, Comparison::less_equal, one);

    Interval row(kDefaultPrecision);
    for (std::int64_t k = K; k >= 1; --k) row += pow(grid.at(1, k), P);
    const Interval bound = row_sum_lower_bound(p, K);
    const Interval growth = pow(P * shrink, P) * log(num(K + 2) / num(2.0));
    cert.add("sum_{k<=K} q(1,k)^p >= p^p (1-eps)^p sum 1/(k+1)", row, Comparison::greater_equal, bound);
    cert.add("p^p (1-eps)^p sum 1/(k+1) >= p^p (1-eps)^p log((K+2)/2)", bound, Comparison::greater_equal, growth);
    cert.report("row_sum", row);
    cert.report("row_sum_lower_bound", bound);
  } else {
    const Interval x0 = num(J0);
    cert.report("J0", x0);
    cert.add("J0 > e^4", x0, Comparison::greater, exp(num(4.0)));
    cert.add("sqrt(J0) >= log(J0)^2", sqrt(x0), Comparison::greater_equal, sqr(log(x0)));

    // Past J0, q(s) >= sum_{n>=s} n^(-5/2) >= (2/3) s^(-3/2).
    const Interval three_halves = num(1.5);
    const Interval two_thirds = num(2.0) / num(3.0);
    Interval ratio = Interval::positive_infinity();
    for (std::int64_t s = J0; s <= grid.J + grid.K; ++s) {
      ratio = min(ratio, grid.diagonal(s) * pow(num(s), three_halves));
    }
    cert.add("min_{s>=J0} q(s) s^(3/2)", ratio, Comparison::greater_equal, two_thirds);

    // Rows J0 <= j < J0 + K truncated at k <= K, against
    // sum_{k<=K} (2/3)(j+k)^(-3/2) >= (4/3)((j+1)^(-1/2) - (j+K+1)^(-1/2)).
    Interval block(kDefaultPrecision);
    for (std::int64_t s = J0 + 1; s <= J0 + 2 * K - 1; ++s) {
      block += grid.diagonal(s) * static_cast<long>(diagonal_count(s - J0 + 1, K, K));
    }
    const Interval four_thirds = num(4.0) / num(3.0);
    const Interval minus_half = num(-0.5);
    Interval bound(kDefaultPrecision);
    for (std::int64_t j = J0 + K - 1; j >= J0; --j) {
      bound += four_thirds * (pow(num(j + 1), minus_half) - pow(num(j + K + 1), minus_half));
    }
    cert.add("sum_{J0<=j<J0+K, k<=K} q(j,k) >= sum_j (4/3)((j+1)^(-1/2) - (j+K+1)^(-1/2))", block,
             Comparison::greater_equal, bound);
    cert.report("block_sum", block);
    cert.report("row_sum_lower_bound", bound);

    Interval upper_ratio(kDefaultPrecision);
    for (std::int64_t s = 2; s <= grid.J + grid.K; ++s) upper_ratio = max(upper_ratio, grid.diagonal(s) * num(s - 1));
    cert.add("max_s q(s) (s-1)", upper_ratio, Comparison::less_equal, one);
  }

  // sum_{j,k} q^r <= sum_{s>=2} (s-1) (p (s-1)^(-1/p))^r = p^r zeta(r/p - 1).
  if (r > 2.0 * p) {
    Interval partial(kDefaultPrecision);
    for (std::int64_t s = 2 * K; s >= 2; --s) {
      partial += pow(grid.diagonal(s), R) * static_cast<long>(diagonal_count(s, K, K));
    }
    const Interval majorant = pow(P, R) * zeta_upper(R / P - one);
    cert.add("sum_{j,k<=K} q(j,k)^r <= p^r zeta(r/p - 1)", partial, Comparison::less_equal, majorant);
    cert.report("lr_partial_sum", partial);
    cert.report("lr_majorant", majorant);
  } else {
    cert.notes.push_back("r <= 2p: l_r membership of q is not certified");
  }
  return cert;
}

}  // namespace coblab

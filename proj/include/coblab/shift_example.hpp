#pragma once

// The shift pair U f(j,k) = f(j+1,k), V f(j,k) = f(j,k+1) on l_p(N^2), the
// closed-form h with (I - U) h a joint coboundary, and certificates that the
// only candidate double-coboundary solution q = sum_n V^n h leaves l_p.

#include <cstdint>
#include <vector>

#include "coblab/constructions.hpp"
#include "coblab/interval.hpp"

namespace coblab {

inline constexpr double kShiftEpsilon = 1e-3;

/// A positive function of s = j + k on N^2 (j, k >= 1).
struct LatticeFunction {
  enum class Kind { power, log_power };

  /// power: s^(-a/p); log_power: s^(-2) log(s)^(-2).
  Kind kind = Kind::power;
  double p = 2.0;
  double a = 3.0;

  /// Value on the diagonal j + k = s >= 2.
  Interval at_diagonal(std::int64_t s, mpfr_prec_t prec = kDefaultPrecision) const;
  Interval at(std::int64_t j, std::int64_t k, mpfr_prec_t prec = kDefaultPrecision) const {
    return at_diagonal(j + k, prec);
  }
  double value(std::int64_t j, std::int64_t k) const;
};

/// Power kind with a = p + 1 for p > 1, log-power kind for p = 1.
LatticeFunction build_h(double p);

struct LpNorm {
  /// sum over j <= J, k <= K of f^p.
  Interval partial;
  /// Upper bound on the sum over the complement of the rectangle; +inf when
  /// the comparison series diverges.
  Interval tail_bound;
  /// Enclosure of the full sum from diagonals s <= J + K plus a two-sided
  /// integral enclosure of the remaining diagonals.
  Interval total;
};

LpNorm lp_partial_norm(const LatticeFunction& f, double p, std::int64_t J, std::int64_t K);

/// sum_{j <= J} 1 / (j log(j+1)^2), which dominates every row-truncated l_1
/// sum of the log-power function.
Interval log_power_majorant(std::int64_t J);

/// q(j,k) = sum_{n >= 0} f(j, k+n), which depends only on s = j + k.
struct QGrid {
  std::int64_t J = 0;
  std::int64_t K = 0;
  /// Q(s) for s = 2 .. J + K, stored at index s - 2.
  std::vector<Interval> by_diagonal;
  /// Enclosure of the discarded tail sum_{n > last} f(n).
  Interval tail;
  /// Power kind: p s^(-1/p) (1 - eps) <= Q(s) <= p (s-1)^(-1/p) on every stored s.
  /// Log-power kind: Q(s) <= 1 / (s-1) on every stored s.
  bool bounds_certified = false;

  const Interval& diagonal(std::int64_t s) const { return by_diagonal.at(static_cast<std::size_t>(s - 2)); }
  const Interval& at(std::int64_t j, std::int64_t k) const { return diagonal(j + k); }
};

/// Backward recurrence Q(s) = f(s) + Q(s+1) from s = J + K + tail_terms, seeded
/// with an integral enclosure of the remaining tail.
QGrid build_q(const LatticeFunction& f, std::int64_t J, std::int64_t K, std::int64_t tail_terms = 10000);

/// Largest |((I-U)(I-V) q - (I-U) h)(j,k)| over 1 <= j < J, 1 <= k < K, as an
/// upper bound from the interval enclosures.
double roundtrip_residual(const QGrid& q, const LatticeFunction& f);

/// First n > e^4 with sqrt(n) >= log(n)^2, certified. Past it, s^(-2) log(s)^(-2) >= s^(-5/2).
std::int64_t log_power_threshold();

/// Lower bound on sum_{k<=K} q(1,k)^p for the power kind; 4 sum 1/(k+1) (1-eps)^2 at p = 2.
Interval row_sum_lower_bound(double p, std::int64_t K);

/// Certifies that row sums of q^p grow without bound, and for r > 2p that
/// the partial l_r sums stay below the analytic majorant. r <= 0 selects 2p + 1.
Certificate divergence_certificate(double p, std::int64_t K, double r = 0.0);

}  // namespace coblab

#pragma once

// Rational approximation of quadratic irrationals: continued fractions,
// certified distances to the nearest integer, simultaneous Dirichlet
// searches and badness diagnostics.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coblab/interval.hpp"
#include "coblab/irrational.hpp"

namespace coblab {

/// Adaptive precision schedule: start, doubling, hard cap.
struct PrecisionPolicy {
  mpfr_prec_t start = kDefaultPrecision;
  mpfr_prec_t cap = kMaxPrecision;
};

/// An integer q with certified enclosures of ||q alpha||, ||q beta|| and of
/// sqrt(q) * max(||q alpha||, ||q beta||).
struct ApproximationRecord {
  std::int64_t q = 0;
  Interval dist_alpha;
  Interval dist_beta;
  Interval quality;
};

/// Which of ||q alpha||, ||q beta|| is larger, when that is decided.
enum class Dominance { alpha, beta, undecided };

std::string to_string(Dominance d);

// --- continued fractions --------------------------------------------------

/// Partial quotients a_0..a_depth, computed exactly.
std::vector<mpz_class> continued_fraction(const Irrational& x, std::size_t depth);

struct Convergent {
  mpz_class p;
  mpz_class q;
};

/// p_k / q_k for k = 0..quotients.size()-1.
std::vector<Convergent> convergents(const std::vector<mpz_class>& quotients);

/// Eventually periodic expansion [a_0; preperiod..., (period)...]. The
/// preperiod vector includes a_0.
struct PeriodicExpansion {
  std::vector<mpz_class> preperiod;
  std::vector<mpz_class> period;
};

PeriodicExpansion periodic_expansion(const Irrational& x);

// --- distances --------------------------------------------------------------

/// Enclosure of ||q x|| of width <= tol. Throws PrecisionExhausted past the cap.
Interval nearest_integer_distance(const Irrational& x, const mpz_class& q, double tol,
                                  const PrecisionPolicy& policy = {});

/// Record for q with distance widths <= tol.
ApproximationRecord make_record(const Irrational& alpha, const Irrational& beta, std::int64_t q,
                                double tol = 1e-20, const PrecisionPolicy& policy = {});

Dominance dominance(const ApproximationRecord& record);

// --- simultaneous approximation --------------------------------------------

struct SearchOptions {
  double tol = 1e-20;
  unsigned threads = 1;
  PrecisionPolicy precision;
};

struct DirichletSearchResult {
  /// q <= Q with max(||q alpha||, ||q beta||) < q^{-1/2}, certified, ascending.
  std::vector<ApproximationRecord> records;
  /// q whose comparison stayed unresolved at the precision cap.
  std::vector<std::int64_t> unresolved;
};

DirichletSearchResult dirichlet_pair_search(const Irrational& alpha, const Irrational& beta,
                                            std::int64_t Q, const SearchOptions& options = {});

struct LacunarySelection {
  std::vector<ApproximationRecord> picked;
  /// Certified enclosure of sum_k q_k^{-1/2}.
  Interval inverse_sqrt_sum;
};

inline constexpr double kDefaultLacunaryRatio = 2.0;
inline constexpr double kDefaultSeriesBudget = 4.0;

/// Greedy smallest-first selection with q_{k+1} >= ratio * q_k and
/// sum q_k^{-1/2} <= budget. Throws Shortfall when fewer than two survive.
LacunarySelection select_summable_lacunary(const std::vector<ApproximationRecord>& records,
                                           double ratio = kDefaultLacunaryRatio,
                                           double budget = kDefaultSeriesBudget);

/// Finite-depth estimate of C(alpha, beta) = liminf sqrt(q) max(||q alpha||, ||q beta||):
/// the running minimum over q <= Q. An upper estimate only; the liminf itself
/// is not computable from a truncation.
struct BadPairEstimate {
  Interval value;
  std::int64_t argmin = 0;
  Dominance dominant = Dominance::undecided;
  /// (Q', minimum over q <= Q') each time the running minimum drops.
  std::vector<std::pair<std::int64_t, Interval>> record_lows;
  /// Count of q <= Q where ||q beta|| >= ||q alpha|| is certified.
  std::int64_t beta_dominant_count = 0;
};

BadPairEstimate bad_pair_constant(const Irrational& alpha, const Irrational& beta, std::int64_t Q,
                                  const SearchOptions& options = {});

/// Bounded-quotient diagnostics for a single irrational.
struct BadnessProfile {
  /// sup of a_k over k >= 1, certified by periodicity.
  mpz_class max_quotient;
  std::size_t preperiod_length = 0;
  std::size_t period_length = 0;
  /// q_k ||q_k x|| for convergent denominators q_0..q_depth.
  std::vector<std::pair<mpz_class, Interval>> convergent_values;
  Interval min_value;
  mpz_class argmin;
};

BadnessProfile badness_profile(const Irrational& x, std::size_t depth);

struct SquareApproximation {
  std::int64_t n = 0;
  Interval dist;       ///< ||n^2 beta||
  Interval threshold;  ///< n^{-delta}
};

/// n <= N with ||n^2 beta|| < n^{-delta}; delta must lie in (1/2, 2/3).
std::vector<SquareApproximation> square_approximation_search(const Irrational& beta, double delta,
                                                             std::int64_t N,
                                                             const SearchOptions& options = {});

/// m alpha + n beta + p = 0.
struct Dependence {
  mpz_class m;
  mpz_class n;
  mpz_class p;
  mpz_class gcd_mn;
};

struct DependenceSearch {
  std::optional<Dependence> dependence;
  /// Set when no dependence can exist at any bound (different quadratic fields).
  bool proven_independent = false;
  std::string reason;
};

/// Exhaustive search over |m|, |n|, |p| <= B. Returns the relation with the
/// smallest |m|+|n|+|p| (ties by |m|, |n|, |p|), normalized to m > 0.
DependenceSearch integer_dependence_search(const Irrational& alpha, const Irrational& beta,
                                           std::int64_t B);

/// Exact test of m alpha + n beta + p == 0.
bool is_dependence(const Irrational& alpha, const Irrational& beta, const mpz_class& m,
                   const mpz_class& n, const mpz_class& p);

}  // namespace coblab

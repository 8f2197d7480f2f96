#pragma once

// Explicit joint-but-not-double coboundaries for rotation pairs, their
// certificates, and checkers for sufficient conditions on Fourier decay.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coblab/diophantine.hpp"
#include "coblab/fourier.hpp"
#include "coblab/spectral.hpp"

namespace coblab {

enum class CertificateKind { joint_upper_bound, double_lower_bound, membership, divergence_witness };
enum class Comparison { less, less_equal, greater, greater_equal };

std::string to_string(CertificateKind kind);
/// "<", "<=", ">", ">="
std::string to_string(Comparison c);

struct CertificateEntry {
  std::string description;
  Interval enclosure;
  Interval threshold;
  Comparison comparison = Comparison::less_equal;
  /// The comparison holds for every point of both enclosures.
  bool holds = false;
};

/// A list of certified comparisons. The verdict is the conjunction of the
/// entries; reported values and notes carry context only.
struct Certificate {
  CertificateKind kind = CertificateKind::membership;
  std::string title;
  std::vector<CertificateEntry> entries;
  std::vector<std::pair<std::string, Interval>> values;
  std::vector<std::string> notes;

  bool verdict() const;
  void add(std::string description, Interval enclosure, Comparison comparison, Interval threshold);
  void report(std::string name, Interval value) { values.emplace_back(std::move(name), std::move(value)); }
};

struct ConstructionOptions {
  double ratio = kDefaultLacunaryRatio;
  double budget = kDefaultSeriesBudget;
  double tol = 1e-20;
  unsigned threads = 1;
};

struct ConstructionResult {
  Irrational alpha;
  Irrational beta;
  /// f_{q_k} on {q_k}; zero elsewhere.
  SparseFourierSeries f;
  /// (I - T_alpha) f = (I - T_beta) g.
  SparseFourierSeries g;
  /// The formal double-solve coefficients of (I - T_alpha) f.
  SparseFourierSeries h;
  std::vector<ApproximationRecord> q_sequence;
  std::vector<Certificate> certificates;
  /// Bound on the discarded tail of sum |g_n|, when one is available.
  std::optional<Interval> tail_bound;
  double ratio = kDefaultLacunaryRatio;
  std::vector<std::string> notes;

  bool verified() const;
};

/// Search q <= Q, keep a summable lacunary subsequence, and use its first K
/// terms with f_{q_k} = ||q_k beta||. Throws Shortfall when fewer than K
/// terms are available and CertificationFailure if a certificate fails.
ConstructionResult build_joint_not_double(const Irrational& alpha, const Irrational& beta, std::int64_t K,
                                          std::int64_t Q, const ConstructionOptions& options = {});

/// Greedy thinning to q_{k+1} >= ratio * q_k with certificates recomputed.
ConstructionResult refine_lacunary(const ConstructionResult& result, double ratio);

/// Lacunary q_k with ||q_k beta|| >= ||q_k alpha|| and C/2 <= sqrt(q_k) ||q_k beta|| <= 2C,
/// where C is the finite-depth bad-pair estimate; f_{q_k} = a_k.
ConstructionResult build_bad_pair_family(const Irrational& alpha, const Irrational& beta, const std::vector<double>& a,
                                         std::int64_t Q, const ConstructionOptions& options = {});

enum class NormMode { c_norm, l2_norm };

/// C mode: sum |k| |f_k|. L2 mode: sum k^2 |f_k|^2. With alpha, also bounds
/// the coboundary solution using c = min over the support of |k| ||k alpha||.
Certificate check_bad_joint(const SparseFourierSeries& f, NormMode mode,
                            const std::optional<Irrational>& alpha = std::nullopt);

enum class TailKind { bounded, divergent, unknown };

/// Analytic information about sum_{k > K} k a_k^2 supplied by the caller.
struct TailInfo {
  TailKind kind = TailKind::unknown;
  /// Upper bound on the tail when kind == bounded.
  double bound = 0.0;
};

/// a_{first}, a_{first+1}, ... must be positive and non-increasing.
Certificate check_mur_envelope(const std::vector<double>& a, const TailInfo& tail = {}, std::int64_t first_index = 1);

/// Smallest M with |f_k| <= M / (k^2 (log |k|)^gamma) over |k| >= 2 in the
/// support, then the envelope a_k = M / (k (log k)^gamma) through the
/// envelope check.
Certificate check_double_bad(const SparseFourierSeries& f, double gamma);

inline constexpr double kDefaultWitnessThreshold = 0.1;

/// |f_n| / (2 pi ||n beta||) at convergent denominators n of beta in the support.
Certificate large_coeff_witness(const SparseFourierSeries& f, const Irrational& beta, std::size_t depth,
                                double threshold = kDefaultWitnessThreshold);

/// sum |f_n|^2 sin^2(pi n beta) / sin^2(pi n alpha), in order of |n|.
CriterionSum petersen_series(const SparseFourierSeries& f, const Irrational& alpha, const Irrational& beta);

struct KacSalemSeries {
  /// sum |phi_k| / |sin(pi k x)|
  CriterionSum sum;
  /// sum |phi_k| log(1 / |phi_k|)
  Interval entropy;
};

KacSalemSeries kac_salem_series(const std::vector<std::pair<std::int64_t, double>>& magnitudes, const Irrational& x);

struct PowerLift {
  /// sum_{n<k} R^n u with u = (I - R) u_x = (I - S) u_y, R = T_gamma, S = R^j.
  SparseFourierSeries v;
  /// (I - R^k) u_x
  SparseFourierSeries via_t;
  /// (I - S) sum_{n<k} R^n u_y
  SparseFourierSeries via_s;
  /// sum_{n<k} R^n u_y, the S-side preimage.
  SparseFourierSeries w;
  double residual_t = 0.0;
  double residual_s = 0.0;
};

/// Throws ConfigError when (I - R) u_x and (I - R^j) u_y differ by more than 1e-12.
PowerLift power_lift_joint(const SparseFourierSeries& u_x, const SparseFourierSeries& u_y, const Irrational& gamma,
                           std::int64_t k, std::int64_t j);

/// Joint coboundary for a dependent pair m alpha + n beta + p = 0 with
/// gcd(m, n) = 1, built from gamma = (alpha + j p) / n with T_alpha = R^n and
/// T_beta or its inverse equal to R^|m|.
struct DependentLift {
  Dependence dependence;  ///< normalized to n > 0
  Irrational gamma;
  std::int64_t power_alpha = 0;
  std::int64_t power_beta = 0;
  bool beta_inverted = false;
  PowerLift lift;
  /// (I - T_alpha) f = (I - T_beta) g.
  SparseFourierSeries f;
  SparseFourierSeries g;
  double residual = 0.0;
};

DependentLift lift_dependent_pair(const Irrational& alpha, const Irrational& beta, const Dependence& dependence,
                                  const SparseFourierSeries& seed);

}  // namespace coblab

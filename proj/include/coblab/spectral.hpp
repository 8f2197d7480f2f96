#pragma once

// Atomic spectral measures of a rotation pair and the membership criteria
// for single, joint and double coboundaries.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coblab/diophantine.hpp"
#include "coblab/fourier.hpp"

namespace coblab {

/// Atom at (e(n alpha), e(n beta)) carrying |f_n|^2.
struct SpectralAtom {
  std::int64_t n = 0;
  Interval mass;
  Interval divisor_alpha;  ///< |1 - e(n alpha)|^2
  Interval divisor_beta;   ///< |1 - e(n beta)|^2
};

struct AtomicSpectralMeasure {
  /// Sorted by (|n|, n); this is also the summation order everywhere below.
  std::vector<SpectralAtom> atoms;

  Interval total_mass() const;
  const SpectralAtom* find(std::int64_t n) const;
};

AtomicSpectralMeasure spectral_measure(const SparseFourierSeries& f, const Irrational& alpha,
                                       const Irrational& beta, const PrecisionPolicy& policy = {});

struct CriterionTerm {
  std::int64_t n = 0;
  Interval term;
  Interval cumulative;
};

/// Certified partial sum over the atoms. A nonzero mass at the trivial
/// character makes the integral infinite; that is reported as divergent and
/// no sum is formed.
struct CriterionSum {
  Interval value;
  std::vector<CriterionTerm> terms;
  bool divergent = false;
  std::string reason;
};

enum class Side { alpha, beta };

/// sum mass / |1 - e(n x)|^2 for x = alpha or beta.
CriterionSum coboundary_integral(const AtomicSpectralMeasure& m, Side which);

struct JointCriterion {
  CriterionSum sum;
  Interval alpha_part;
  Interval beta_part;
  /// |sum - (alpha_part + beta_part)| relative to the sum, on midpoints.
  double cross_check = 0.0;
};

/// sum mass (|z1 - 1|^2 + |z2 - 1|^2) / (|z1 - 1|^2 |z2 - 1|^2).
JointCriterion joint_criterion_sum(const AtomicSpectralMeasure& m);

struct DoubleCriterion {
  CriterionSum sum;
  std::optional<double> threshold;
  /// Certified: the partial sum's lower end exceeds the threshold.
  bool threshold_exceeded = false;
};

/// sum mass / (|z1 - 1|^2 |z2 - 1|^2). The term ledger gives per-atom
/// certified lower bounds through each term's enclosure.
DoubleCriterion double_criterion_sum(const AtomicSpectralMeasure& m, std::optional<double> threshold = std::nullopt);

struct RateRow {
  std::int64_t n = 0;
  Interval norm;      ///< || sum_{k<n} sum_{j<n} T^k S^j f ||_2
  Interval per_n;     ///< norm / n
  Interval per_n2;    ///< norm / n^2
};

/// Cesaro rates at the given n, in the order given. No extrapolation.
std::vector<RateRow> cesaro_rate_profile(const SparseFourierSeries& f, const Irrational& alpha,
                                         const Irrational& beta, const std::vector<std::int64_t>& n_values);

struct DoublingTriplingVariance {
  /// || (1/n) sum_{k,j<n} z^{2^k 3^j} ||_2^2
  mpq_class value;
  std::size_t products = 0;
  std::size_t distinct = 0;
};

/// Exact; the products 2^k 3^j are compared as integers.
DoublingTriplingVariance doubling_tripling_variance(std::int64_t n);

}  // namespace coblab

#include "coblab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "coblab/errors.hpp"

namespace coblab {

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::joint_upper_bound:
      return "joint-upper-bound";
    case CertificateKind::double_lower_bound:
      return "double-lower-bound";
    case CertificateKind::membership:
      return "membership";
    case CertificateKind::divergence_witness:
      return "divergence-witness";
  }
  return "unknown";
}

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::less:
      return "<";
    case Comparison::less_equal:
      return "<=";
    case Comparison::greater:
      return ">";
    case Comparison::greater_equal:
      return ">=";
  }
  return "?";
}

bool Certificate::verdict() const {
  return std::all_of(entries.begin(), entries.end(), [](const CertificateEntry& e) { return e.holds; });
}

void Certificate::add(std::string description, Interval enclosure, Comparison comparison, Interval threshold) {
  bool holds = false;
  switch (comparison) {
    case Comparison::less:
      holds = certainly_less(enclosure, threshold);
      break;
    case Comparison::less_equal:
      holds = certainly_less_equal(enclosure, threshold);
      break;
    case Comparison::greater:
      holds = certainly_greater(enclosure, threshold);
      break;
    case Comparison::greater_equal:
      holds = certainly_greater_equal(enclosure, threshold);
      break;
  }
  entries.push_back({std::move(description), std::move(enclosure), std::move(threshold), comparison, holds});
}

bool ConstructionResult::verified() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const Certificate& c) { return c.verdict(); });
}

namespace {

Interval point(double x) { return Interval::from_double(x); }

Interval midpoint(const Interval& x) {
  BigFloat m(x.precision());
  mpfr_add(m.get(), x.lo().get(), x.hi().get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  BigFloat copy = m;
  return from_endpoints(std::move(m), std::move(copy));
}

std::string label(const char* name, std::int64_t q) { return std::string(name) + "[q=" + std::to_string(q) + "]"; }

Interval half_pi() { return Interval::pi() / Interval::from_int(2); }

Interval inverse_sqrt(std::int64_t q) { return Interval::from_int(1) / sqrt(Interval::from_int(static_cast<long>(q))); }

void require_verified(const Certificate& c) {
  if (c.verdict()) return;
  for (const auto& e : c.entries) {
    if (!e.holds) {
      throw CertificationFailure(c.title + ": " + e.description + " failed with enclosure " + e.enclosure.to_string() +
                                 " against " + e.threshold.to_string());
    }
  }
}

// (I - T_alpha) f and (I - T_beta) g coefficientwise.
double joint_identity_residual(const SparseFourierSeries& f, const SparseFourierSeries& g, const Irrational& alpha,
                               const Irrational& beta) {
  return max_relative_difference(apply_coboundary(f, alpha), apply_coboundary(g, beta));
}

Certificate membership_certificate(const ConstructionResult& r) {
  Certificate c;
  c.kind = CertificateKind::membership;
  c.title = "joint coboundary identity and lacunarity";
  c.add("max relative difference of (I-T_alpha)f and (I-T_beta)g", point(joint_identity_residual(r.f, r.g, r.alpha, r.beta)),
        Comparison::less_equal, point(1e-12));
  for (std::size_t k = 1; k < r.q_sequence.size(); ++k) {
    mpq_class gap(r.q_sequence[k].q, r.q_sequence[k - 1].q);
    gap.canonicalize();
    c.add("q_{k+1}/q_k at k=" + std::to_string(k), Interval::from_mpq(gap), Comparison::greater_equal,
          Interval::from_mpq(mpq_class(r.ratio)));
  }
  c.report("sum |f_n|", r.f.l1_norm());
  c.report("sum |g_n|", r.g.l1_norm());
  if (r.tail_bound) c.report("tail bound on sum |g_n| beyond the truncation", *r.tail_bound);
  return c;
}

// Everything derived from a chosen q-sequence.
ConstructionResult assemble_joint_not_double(const Irrational& alpha, const Irrational& beta,
                                             std::vector<ApproximationRecord> records, double ratio) {
  ConstructionResult r{alpha, beta};
  r.ratio = ratio;
  r.q_sequence = std::move(records);
  for (const auto& rec : r.q_sequence) r.f.set(rec.q, ComplexInterval::real(midpoint(rec.dist_beta)));
  r.g = transfer_coefficients(r.f, alpha, beta).series;
  r.h = double_solve(apply_coboundary(r.f, alpha), alpha, beta).series;

  // Tail of (pi/2) sum q_k^{-1/2} past q_K when the gaps stay >= ratio.
  const Interval s = Interval::from_int(1) / sqrt(Interval::from_double(ratio));
  r.tail_bound = half_pi() * inverse_sqrt(r.q_sequence.back().q) * s / (Interval::from_int(1) - s);

  Certificate star;
  star.kind = CertificateKind::joint_upper_bound;
  star.title = "joint upper bound: sum |g_{q_k}| <= (pi/2) sum ||q_k alpha|| <= (pi/2) sum q_k^{-1/2}";
  Interval sum_g(kCoefficientPrecision), sum_alpha(kCoefficientPrecision), sum_q(kCoefficientPrecision),
      sum_middle(kCoefficientPrecision);
  for (const auto& rec : r.q_sequence) {
    const Interval g_abs = r.g.coeff(rec.q).abs();
    const Interval f_abs = r.f.coeff(rec.q).abs();
    star.add(label("|g|", rec.q) + " <= (pi/2) ||q alpha||", g_abs, Comparison::less_equal,
             half_pi() * rec.dist_alpha);
    sum_g += g_abs;
    sum_alpha += rec.dist_alpha;
    sum_q += inverse_sqrt(rec.q);
    sum_middle += f_abs * rec.dist_alpha / rec.dist_beta;
  }
  star.add("sum |g_{q_k}| <= (pi/2) sum ||q_k alpha||", sum_g, Comparison::less_equal, half_pi() * sum_alpha);
  star.add("(pi/2) sum ||q_k alpha|| < (pi/2) sum q_k^{-1/2}", half_pi() * sum_alpha, Comparison::less,
           half_pi() * sum_q);
  star.add("sum |g_{q_k}| < (pi/2) sum q_k^{-1/2}", sum_g, Comparison::less, half_pi() * sum_q);
  star.report("sum |g_{q_k}|", sum_g);
  star.report("(pi/2) sum |f_{q_k}| ||q_k alpha|| / ||q_k beta||", half_pi() * sum_middle);
  star.report("(pi/2) sum ||q_k alpha||", half_pi() * sum_alpha);
  star.report("(pi/2) sum q_k^{-1/2}", half_pi() * sum_q);

  Certificate double_star;
  double_star.kind = CertificateKind::double_lower_bound;
  double_star.title = "double lower bound: 1/(2 pi) <= |h_{q_k}| <= 1/4";
  const Interval lower = Interval::from_int(1) / (Interval::pi() * 2L);
  const Interval upper = Interval::from_mpq(mpq_class(1, 4));
  for (const auto& rec : r.q_sequence) {
    const Interval h_abs = r.h.coeff(rec.q).abs();
    double_star.add(label("|h|", rec.q) + " >= 1/(2 pi)", h_abs, Comparison::greater_equal, lower);
    double_star.add(label("|h|", rec.q) + " <= 1/4", h_abs, Comparison::less_equal, upper);
    double_star.add(label("width |h|", rec.q) + " <= 1e-10", point(h_abs.width()), Comparison::less_equal,
                    point(1e-10));
    // |h| = f / (2 sin(pi ||q beta||)) evaluated independently of the solver.
    const Interval direct =
        r.f.coeff(rec.q).abs() / (sin_pi(rec.dist_beta) * 2L);
    double_star.report(label("f/(2 sin(pi ||q beta||))", rec.q), direct);
  }

  r.certificates = {std::move(star), std::move(double_star)};
  r.certificates.push_back(membership_certificate(r));
  for (const auto& c : r.certificates) require_verified(c);
  return r;
}

}  // namespace

ConstructionResult build_joint_not_double(const Irrational& alpha, const Irrational& beta, std::int64_t K,
                                          std::int64_t Q, const ConstructionOptions& options) {
  if (K < 2) throw ConfigError("build_joint_not_double: K must be at least 2");
  if (Q < 1) throw ConfigError("build_joint_not_double: Q must be positive");
  const SearchOptions search{options.tol, options.threads, {}};
  const auto found = dirichlet_pair_search(alpha, beta, Q, search);
  if (found.records.size() < 2) {
    throw Shortfall("build_joint_not_double: only " + std::to_string(found.records.size()) +
                    " Dirichlet denominators up to Q = " + std::to_string(Q));
  }
  auto selection = select_summable_lacunary(found.records, options.ratio, options.budget);
  if (static_cast<std::int64_t>(selection.picked.size()) < K) {
    throw Shortfall("build_joint_not_double: " + std::to_string(selection.picked.size()) +
                    " lacunary terms up to Q = " + std::to_string(Q) + ", need K = " + std::to_string(K));
  }
  selection.picked.resize(static_cast<std::size_t>(K));
  ConstructionResult r = assemble_joint_not_double(alpha, beta, std::move(selection.picked), options.ratio);
  r.notes.push_back(std::to_string(found.records.size()) + " Dirichlet denominators found up to Q = " +
                    std::to_string(Q));
  if (!found.unresolved.empty()) {
    r.notes.push_back(std::to_string(found.unresolved.size()) + " denominators left unresolved at the precision cap");
  }
  return r;
}

ConstructionResult refine_lacunary(const ConstructionResult& result, double ratio) {
  if (!(ratio > 1.0)) throw ConfigError("refine_lacunary: ratio must exceed 1");
  const mpq_class exact(ratio);
  std::vector<ApproximationRecord> kept;
  for (const auto& rec : result.q_sequence) {
    if (kept.empty() || mpq_class(rec.q) >= exact * kept.back().q) kept.push_back(rec);
  }
  if (kept.size() < 2) throw Shortfall("refine_lacunary: fewer than two terms survive ratio " + std::to_string(ratio));
  ConstructionResult r = assemble_joint_not_double(result.alpha, result.beta, std::move(kept), ratio);
  r.notes = result.notes;
  r.notes.push_back("thinned to ratio " + std::to_string(ratio));
  return r;
}

ConstructionResult build_bad_pair_family(const Irrational& alpha, const Irrational& beta, const std::vector<double>& a,
                                         std::int64_t Q, const ConstructionOptions& options) {
  if (a.empty()) throw ConfigError("build_bad_pair_family: coefficient list is empty");
  for (double x : a) {
    if (!std::isfinite(x)) throw ConfigError("build_bad_pair_family: coefficients must be finite");
  }
  const SearchOptions search{options.tol, options.threads, {}};
  const BadPairEstimate estimate = bad_pair_constant(alpha, beta, Q, search);
  const Interval& C = estimate.value;
  if (!certainly_positive(C)) throw ConfigError("build_bad_pair_family: bad-pair estimate not separated from 0");

  const Interval half_c = C / Interval::from_int(2);
  const Interval twice_c = C * 2L;
  std::vector<ApproximationRecord> candidates;
  bool any_beta = false;
  for (auto& rec : dirichlet_pair_search(alpha, beta, Q, search).records) {
    if (dominance(rec) != Dominance::beta) continue;
    any_beta = true;
    const Interval scaled = sqrt(Interval::from_int(static_cast<long>(rec.q))) * rec.dist_beta;
    if (certainly_less_equal(half_c, scaled) && certainly_less_equal(scaled, twice_c)) candidates.push_back(rec);
  }
  if (!any_beta) throw Shortfall("build_bad_pair_family: no q <= Q with ||q beta|| >= ||q alpha||");
  if (candidates.size() < 2) throw Shortfall("build_bad_pair_family: fewer than two q in the band [C/2, 2C]");
  auto selection = select_summable_lacunary(candidates, options.ratio, options.budget);
  if (selection.picked.size() < a.size()) {
    throw Shortfall("build_bad_pair_family: " + std::to_string(selection.picked.size()) + " admissible q, need " +
                    std::to_string(a.size()));
  }
  selection.picked.resize(a.size());

  ConstructionResult r{alpha, beta};
  r.ratio = options.ratio;
  r.q_sequence = std::move(selection.picked);
  for (std::size_t k = 0; k < a.size(); ++k) r.f.set(r.q_sequence[k].q, ComplexInterval::from({a[k], 0.0}));
  r.g = transfer_coefficients(r.f, alpha, beta).series;
  r.h = solve_coboundary(r.f, beta).series;
  r.notes.push_back("bad-pair hypothesis verified only to depth Q = " + std::to_string(Q) +
                    "; C is the running minimum there, an assumption about the liminf");

  Certificate assumption;
  assumption.kind = CertificateKind::membership;
  assumption.title = "selection: ||q beta|| >= ||q alpha|| and C/2 <= sqrt(q) ||q beta|| <= 2C";
  assumption.report("C (finite depth)", C);
  assumption.notes.push_back("C is a finite-depth estimate of the liminf, treated as an assumption");
  for (const auto& rec : r.q_sequence) {
    const Interval scaled = sqrt(Interval::from_int(static_cast<long>(rec.q))) * rec.dist_beta;
    assumption.add(label("||q beta||", rec.q) + " >= ||q alpha||", rec.dist_beta, Comparison::greater_equal,
                   rec.dist_alpha);
    assumption.add(label("sqrt(q) ||q beta||", rec.q) + " >= C/2", scaled, Comparison::greater_equal, half_c);
    assumption.add(label("sqrt(q) ||q beta||", rec.q) + " <= 2C", scaled, Comparison::less_equal, twice_c);
  }

  Certificate joint;
  joint.kind = CertificateKind::joint_upper_bound;
  joint.title = "|g_{q_k}| <= (pi/2) |a_k|";
  Interval sum_a(kCoefficientPrecision);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::int64_t q = r.q_sequence[k].q;
    const Interval ak = abs(point(a[k]));
    sum_a += ak;
    joint.add(label("|g|", q) + " <= (pi/2)|a_k|", r.g.coeff(q).abs(), Comparison::less_equal, half_pi() * ak);
  }
  joint.report("sum |a_k|", sum_a);
  joint.report("sum |g_{q_k}|", r.g.l1_norm());

  Certificate witness;
  witness.kind = CertificateKind::divergence_witness;
  witness.title = "|h_{q_k}| >= |a_k| sqrt(q_k) / (4 pi C)";
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::int64_t q = r.q_sequence[k].q;
    const Interval bound =
        abs(point(a[k])) * sqrt(Interval::from_int(static_cast<long>(q))) / (Interval::pi() * 4L * C);
    witness.add(label("|h|", q) + " >= |a_k| sqrt(q_k)/(4 pi C)", r.h.coeff(q).abs(), Comparison::greater_equal, bound);
    witness.report(label("sqrt(q_k) |a_k|", q), abs(point(a[k])) * sqrt(Interval::from_int(static_cast<long>(q))));
  }

  r.certificates = {std::move(assumption), std::move(joint), std::move(witness)};
  r.certificates.push_back(membership_certificate(r));
  for (const auto& c : r.certificates) require_verified(c);
  return r;
}

Certificate check_bad_joint(const SparseFourierSeries& f, NormMode mode, const std::optional<Irrational>& alpha) {
  if (!f.is_centered()) throw ConfigError("check_bad_joint: the constant Fourier coefficient must vanish");
  Certificate c;
  c.kind = CertificateKind::membership;
  const bool c_mode = mode == NormMode::c_norm;
  c.title = c_mode ? "sum |k| |f_k|" : "sum k^2 |f_k|^2";
  Interval value(kCoefficientPrecision);
  for (const auto& [k, coeff] : f.coefficients()) {
    const Interval kk = Interval::from_int(static_cast<long>(std::llabs(k)));
    value += c_mode ? kk * coeff.abs() : sqr(kk) * coeff.norm();
  }
  c.report(c_mode ? "sum |k| |f_k|" : "sum k^2 |f_k|^2", value);
  if (!alpha || f.empty()) return c;

  // c_alpha = min over the support of |k| ||k alpha||.
  std::optional<Interval> badness;
  for (const auto& [k, coeff] : f.coefficients()) {
    const Interval kk = Interval::from_int(static_cast<long>(std::llabs(k)));
    const Interval term = kk * nearest_int_distance(alpha->enclose_multiple(static_cast<long>(k)));
    badness = badness ? min(*badness, term) : term;
  }
  c.report("c = min |k| ||k alpha|| over the support", *badness);
  c.notes.push_back("c is taken over the finite support only");
  const auto g = solve_coboundary(f, *alpha).series;
  if (c_mode) {
    const Interval bound = value / (*badness * 4L);
    c.add("sum |g_k| <= sum |k| |f_k| / (4c)", g.l1_norm(), Comparison::less_equal, bound);
  } else {
    const Interval bound = value / (sqr(*badness) * 16L);
    c.add("sum |g_k|^2 <= sum k^2 |f_k|^2 / (16 c^2)", g.l2_norm_squared(), Comparison::less_equal, bound);
  }
  return c;
}

Certificate check_mur_envelope(const std::vector<double>& a, const TailInfo& tail, std::int64_t first_index) {
  if (a.empty()) throw ConfigError("check_mur_envelope: empty envelope");
  if (first_index < 1) throw ConfigError("check_mur_envelope: indices start at 1 or later");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !std::isfinite(a[i])) throw ConfigError("check_mur_envelope: entries must be positive");
    if (i > 0 && a[i] > a[i - 1]) {
      throw ConfigError("check_mur_envelope: envelope increases at index " +
                        std::to_string(first_index + static_cast<std::int64_t>(i)));
    }
  }
  Certificate c;
  c.kind = tail.kind == TailKind::divergent ? CertificateKind::divergence_witness : CertificateKind::membership;
  c.title = "sum k a_k^2 for a non-increasing envelope";
  // The largest step a_{k+1} - a_k, exact in doubles' enclosure.
  Interval largest_step = Interval::from_int(0);
  Interval partial(kCoefficientPrecision);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Interval ai = point(a[i]);
    partial += Interval::from_int(first_index + static_cast<long>(i)) * sqr(ai);
    if (i > 0) largest_step = max(largest_step, ai - point(a[i - 1]));
  }
  c.add("max_k (a_{k+1} - a_k) <= 0", largest_step, Comparison::less_equal, Interval::from_int(0));
  c.report("partial sum k a_k^2", partial);

  Interval total = partial;
  switch (tail.kind) {
    case TailKind::bounded:
      if (!(tail.bound >= 0.0)) throw ConfigError("check_mur_envelope: tail bound must be nonnegative");
      total = partial + Interval::from_bounds(0.0, tail.bound);
      c.report("tail bound", point(tail.bound));
      break;
    case TailKind::divergent:
      total = Interval::positive_infinity();
      c.notes.push_back("tail diverges by the supplied analytic information");
      break;
    case TailKind::unknown:
      total = partial + Interval::nonnegative();
      c.notes.push_back("no tail information; convergence not decided");
      break;
  }
  c.add("sum k a_k^2 finite", total, Comparison::less, Interval::positive_infinity());
  return c;
}

Certificate check_double_bad(const SparseFourierSeries& f, double gamma) {
  if (!f.is_centered()) throw ConfigError("check_double_bad: the constant Fourier coefficient must vanish");
  if (!(gamma > 1.0)) throw ConfigError("check_double_bad: gamma must exceed 1");
  const Interval g = point(gamma);
  Interval M = Interval::from_int(0);
  std::int64_t largest = 2;
  bool unit_terms = false;
  for (const auto& [k, coeff] : f.coefficients()) {
    const std::int64_t ak = std::llabs(k);
    if (ak < 2) {
      unit_terms = true;
      continue;
    }
    largest = std::max(largest, ak);
    const Interval kk = Interval::from_int(static_cast<long>(ak));
    M = max(M, coeff.abs() * sqr(kk) * pow(log(kk), g));
  }
  std::vector<double> envelope;
  Certificate c;
  if (M.upper() == 0.0) {
    c.kind = CertificateKind::membership;
    c.title = "double-bad envelope";
    c.report("M", M);
    c.notes.push_back("f vanishes on |k| >= 2");
  } else {
    // a_k = M / (k (log k)^gamma) for k = 2..largest, upper endpoints.
    for (std::int64_t k = 2; k <= largest; ++k) {
      const Interval kk = Interval::from_int(static_cast<long>(k));
      envelope.push_back((M / (kk * pow(log(kk), g))).upper());
    }
    // Integral test: sum_{k > K} M^2 / (k (log k)^{2 gamma}) <= M^2 (log K)^{1 - 2 gamma} / (2 gamma - 1).
    const Interval KK = Interval::from_int(static_cast<long>(largest));
    const Interval tail = sqr(M) * pow(log(KK), Interval::from_int(1) - g * 2L) / (g * 2L - Interval::from_int(1));
    c = check_mur_envelope(envelope, TailInfo{TailKind::bounded, tail.upper()}, 2);
    c.title = "double-bad envelope a_k = M / (k (log k)^gamma)";
    c.values.insert(c.values.begin(), {"M", M});
  }
  c.report("gamma", g);
  if (unit_terms) c.notes.push_back("terms with |k| = 1 carry no log factor and are left out of M");
  return c;
}

Certificate large_coeff_witness(const SparseFourierSeries& f, const Irrational& beta, std::size_t depth,
                                double threshold) {
  const auto conv = convergents(continued_fraction(beta, depth));
  Certificate c;
  c.kind = CertificateKind::divergence_witness;
  c.title = "|f_n| / (2 pi ||n beta||) at convergent denominators";
  std::vector<std::int64_t> seen;
  for (const auto& pq : conv) {
    if (!pq.q.fits_slong_p()) break;
    const std::int64_t n = pq.q.get_si();
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
    seen.push_back(n);
    if (!f.contains(n)) continue;
    const Interval dist = nearest_int_distance(beta.enclose_multiple(static_cast<long>(n)));
    const Interval witness = f.coeff(n).abs() / (Interval::pi() * 2L * dist);
    const Interval nn = Interval::from_int(static_cast<long>(n));
    c.add(label("n ||n beta||", n) + " < 1", nn * dist, Comparison::less, Interval::from_int(1));
    c.add(label("|f_n|/(2 pi ||n beta||)", n) + " >= threshold", witness, Comparison::greater_equal, point(threshold));
    c.report(label("|n f_n|/(2 pi)", n), nn * f.coeff(n).abs() / (Interval::pi() * 2L));
  }
  if (c.entries.empty()) throw ConfigError("large_coeff_witness: no convergent denominator of beta in the support");
  return c;
}

CriterionSum petersen_series(const SparseFourierSeries& f, const Irrational& alpha, const Irrational& beta) {
  if (!f.is_centered()) throw ConfigError("petersen_series: the constant Fourier coefficient must vanish");
  std::vector<std::int64_t> order = f.support();
  std::stable_sort(order.begin(), order.end(),
                   [](std::int64_t x, std::int64_t y) { return std::llabs(x) < std::llabs(y); });
  CriterionSum out;
  out.value = Interval(kCoefficientPrecision);
  for (const std::int64_t n : order) {
    const Interval sb = sin_pi(reduce_mod1(beta.enclose_multiple(static_cast<long>(n))));
    const Interval sa = sin_pi(reduce_mod1(alpha.enclose_multiple(static_cast<long>(n))));
    Interval term = f.coeff(n).norm() * sqr(sb) / sqr(sa);
    out.value += term;
    out.terms.push_back({n, std::move(term), out.value});
  }
  return out;
}

KacSalemSeries kac_salem_series(const std::vector<std::pair<std::int64_t, double>>& magnitudes, const Irrational& x) {
  KacSalemSeries out;
  out.sum.value = Interval(kCoefficientPrecision);
  out.entropy = Interval(kCoefficientPrecision);
  for (const auto& [k, m] : magnitudes) {
    if (k == 0) throw ConfigError("kac_salem_series: frequency 0 is excluded");
    if (!(m >= 0.0) || !std::isfinite(m)) throw ConfigError("kac_salem_series: magnitudes must be nonnegative");
    const Interval mag = point(m);
    Interval term = mag / abs(sin_pi(reduce_mod1(x.enclose_multiple(static_cast<long>(k)))));
    out.sum.value += term;
    out.sum.terms.push_back({k, std::move(term), out.sum.value});
    if (m > 0.0) out.entropy -= mag * log(mag);
  }
  return out;
}

PowerLift power_lift_joint(const SparseFourierSeries& u_x, const SparseFourierSeries& u_y, const Irrational& gamma,
                           std::int64_t k, std::int64_t j) {
  if (k < 1 || j < 1) throw ConfigError("power_lift_joint: powers must be positive");
  const Irrational s_angle = gamma * mpq_class(j);
  const Irrational t_angle = gamma * mpq_class(k);
  const SparseFourierSeries u = apply_coboundary(u_x, gamma);
  const double pre = max_relative_difference(u, apply_coboundary(u_y, s_angle));
  if (pre > 1e-12) {
    throw ConfigError("power_lift_joint: (I-R)u_x and (I-R^j)u_y differ (relative " + std::to_string(pre) + ")");
  }
  PowerLift out;
  SparseFourierSeries ru = u, ry = u_y;
  for (std::int64_t n = 0; n < k; ++n) {
    out.v = out.v + ru;
    out.w = out.w + ry;
    if (n + 1 < k) {
      ru = apply_rotation(ru, gamma);
      ry = apply_rotation(ry, gamma);
    }
  }
  out.via_t = apply_coboundary(u_x, t_angle);
  out.via_s = apply_coboundary(out.w, s_angle);
  out.residual_t = max_relative_difference(out.v, out.via_t);
  out.residual_s = max_relative_difference(out.v, out.via_s);
  return out;
}

DependentLift lift_dependent_pair(const Irrational& alpha, const Irrational& beta, const Dependence& dependence,
                                  const SparseFourierSeries& seed) {
  if (!is_dependence(alpha, beta, dependence.m, dependence.n, dependence.p)) {
    throw ConfigError("lift_dependent_pair: the given integers are not a dependence");
  }
  Dependence dep = dependence;
  if (dep.n < 0) {
    dep.m = -dep.m;
    dep.n = -dep.n;
    dep.p = -dep.p;
  }
  mpz_class g, j, k;
  mpz_gcdext(g.get_mpz_t(), j.get_mpz_t(), k.get_mpz_t(), dep.m.get_mpz_t(), dep.n.get_mpz_t());
  if (g != 1 && g != -1) throw ConfigError("lift_dependent_pair: gcd(m, n) must be 1");
  if (g == -1) {
    j = -j;
    k = -k;
  }
  dep.gcd_mn = 1;
  if (!dep.n.fits_slong_p() || !dep.m.fits_slong_p()) throw ConfigError("lift_dependent_pair: powers too large");

  // gamma = (alpha + j p) / n, so n gamma = alpha + j p and -m gamma = beta + k p.
  const Irrational gamma = (alpha + mpq_class(j * dep.p)) * mpq_class(1, dep.n);
  DependentLift out{dep, gamma};
  out.power_alpha = dep.n.get_si();
  out.power_beta = std::labs(dep.m.get_si());
  out.beta_inverted = dep.m > 0;

  // u_x = sum_{i < power_beta} R^i u_y makes (I - R) u_x = (I - R^power_beta) u_y.
  SparseFourierSeries u_x, r = seed;
  for (std::int64_t i = 0; i < out.power_beta; ++i) {
    u_x = u_x + r;
    r = apply_rotation(r, gamma);
  }
  out.lift = power_lift_joint(u_x, seed, gamma, out.power_alpha, out.power_beta);

  // R^power_alpha = T_alpha. R^power_beta = T_beta, or T_beta^{-1} when m > 0,
  // in which case (I - T_beta^{-1}) w = (I - T_beta)(-T_beta^{-1} w).
  out.f = u_x;
  if (out.beta_inverted) {
    out.g = apply_rotation(out.lift.w, -beta) * ComplexInterval::from({-1.0, 0.0});
  } else {
    out.g = out.lift.w;
  }
  out.residual = joint_identity_residual(out.f, out.g, alpha, beta);
  return out;
}

}  // namespace coblab

#include "coblab/diophantine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <utility>

#include "coblab/errors.hpp"

namespace coblab {

std::string to_string(Dominance d) {
  switch (d) {
    case Dominance::alpha:
      return "alpha";
    case Dominance::beta:
      return "beta";
    case Dominance::undecided:
      break;
  }
  return "undecided";
}

namespace {

// x = (P + sqrt(D)) / Q with Q | D - P^2, the form in which the classical
// continued fraction recurrence stays integral.
struct ReducedSurd {
  mpz_class P;
  mpz_class D;
  mpz_class Q;
  mpz_class root;  // floor(sqrt(D))
};

ReducedSurd reduce(const Irrational& x) {
  ReducedSurd r;
  r.D = x.b() * x.b() * x.d();
  if (x.b() > 0) {
    r.P = x.a();
    r.Q = x.c();
  } else {
    r.P = -x.a();
    r.Q = -x.c();
  }
  const mpz_class rem = r.D - r.P * r.P;
  if (rem % r.Q != 0) {
    const mpz_class scale = abs(r.Q);
    r.P *= scale;
    r.D *= scale * scale;
    r.Q *= scale;
  }
  mpz_sqrt(r.root.get_mpz_t(), r.D.get_mpz_t());
  return r;
}

// floor((P + sqrt(D)) / Q), exact since sqrt(D) is irrational.
mpz_class quotient(const ReducedSurd& r) {
  mpz_class numerator = r.P + r.root;
  if (r.Q < 0) numerator += 1;
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), numerator.get_mpz_t(), r.Q.get_mpz_t());
  return out;
}

void advance(ReducedSurd& r, const mpz_class& a) {
  r.P = a * r.Q - r.P;
  r.Q = (r.D - r.P * r.P) / r.Q;
}

// Runs fn(first, last, out) over [1, n] split into contiguous chunks and
// concatenates the per-chunk outputs in order.
template <typename T, typename Fn>
std::vector<T> chunked(std::int64_t n, unsigned threads, Fn fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2 * static_cast<std::int64_t>(threads)) {
    std::vector<T> out;
    fn(1, n, out);
    return out;
  }
  std::vector<std::vector<T>> parts(threads);
  std::vector<std::thread> workers;
  const std::int64_t step = n / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::int64_t first = 1 + t * step;
    const std::int64_t last = (t + 1 == threads) ? n : (t + 1) * step;
    workers.emplace_back([&, first, last, t] { fn(first, last, parts[t]); });
  }
  for (auto& w : workers) w.join();
  std::vector<T> out;
  for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  return out;
}

enum class Outcome { accept, reject, unresolved };

mpq_class fraction(const mpz_class& num, const mpz_class& den) {
  mpq_class out(num, den);
  out.canonicalize();
  return out;
}

// Double-precision screen for ||q x||. The margin dominates the rounding
// error of q * approx(x) by several orders of magnitude, so a lower bound
// taken from it is safe; beyond the valid range it gives up (returns 0).
struct DistanceScreen {
  double x = 0.0;
  double scale = 0.0;  // upper bound on |a| + |b| sqrt(d), over c

  explicit DistanceScreen(const Irrational& v)
      : x(v.approx()),
        scale((std::abs(v.a().get_d()) + std::abs(v.b().get_d()) * std::sqrt(v.d().get_d())) / v.c().get_d()) {}

  struct Estimate {
    double dist;
    double margin;
  };

  std::optional<Estimate> estimate(double q) const {
    const double magnitude = q * scale;
    if (magnitude > 1e12) return std::nullopt;
    const double t = q * x;
    return Estimate{std::abs(t - std::nearbyint(t)), 1e-14 * magnitude + 1e-14};
  }

  double lower_bound(double q) const {
    const auto e = estimate(q);
    return e ? e->dist - e->margin : 0.0;
  }
};

}  // namespace

std::vector<mpz_class> continued_fraction(const Irrational& x, std::size_t depth) {
  ReducedSurd r = reduce(x);
  std::vector<mpz_class> out;
  out.reserve(depth + 1);
  for (std::size_t k = 0; k <= depth; ++k) {
    const mpz_class a = quotient(r);
    out.push_back(a);
    advance(r, a);
  }
  return out;
}

std::vector<Convergent> convergents(const std::vector<mpz_class>& quotients) {
  std::vector<Convergent> out;
  out.reserve(quotients.size());
  mpz_class p_prev = 1, q_prev = 0;
  mpz_class p = quotients.empty() ? mpz_class(0) : quotients[0];
  mpz_class q = 1;
  if (quotients.empty()) return out;
  out.push_back({p, q});
  for (std::size_t k = 1; k < quotients.size(); ++k) {
    mpz_class p_next = quotients[k] * p + p_prev;
    mpz_class q_next = quotients[k] * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    out.push_back({p, q});
  }
  return out;
}

PeriodicExpansion periodic_expansion(const Irrational& x) {
  constexpr std::size_t kMaxSteps = 10'000'000;
  ReducedSurd r = reduce(x);
  std::vector<mpz_class> quotients;
  std::map<std::pair<mpz_class, mpz_class>, std::size_t> seen;
  for (std::size_t k = 0; k < kMaxSteps; ++k) {
    auto key = std::make_pair(r.P, r.Q);
    if (auto it = seen.find(key); it != seen.end()) {
      PeriodicExpansion out;
      out.preperiod.assign(quotients.begin(), quotients.begin() + static_cast<std::ptrdiff_t>(it->second));
      out.period.assign(quotients.begin() + static_cast<std::ptrdiff_t>(it->second), quotients.end());
      return out;
    }
    seen.emplace(std::move(key), k);
    const mpz_class a = quotient(r);
    quotients.push_back(a);
    advance(r, a);
  }
  throw std::runtime_error("periodic_expansion: period not found within step limit");
}

Interval nearest_integer_distance(const Irrational& x, const mpz_class& q, double tol,
                                  const PrecisionPolicy& policy) {
  if (!(tol > 0)) throw ConfigError("nearest_integer_distance: tolerance must be positive");
  for (mpfr_prec_t prec = policy.start; prec <= policy.cap; prec *= 2) {
    Interval d = nearest_int_distance(x.enclose_multiple(q, prec));
    if (d.width() <= tol) return d;
  }
  throw PrecisionExhausted("nearest_integer_distance: width " + std::to_string(tol) +
                           " not reached at " + std::to_string(policy.cap) + " bits");
}

ApproximationRecord make_record(const Irrational& alpha, const Irrational& beta, std::int64_t q, double tol,
                                const PrecisionPolicy& policy) {
  ApproximationRecord rec;
  rec.q = q;
  rec.dist_alpha = nearest_integer_distance(alpha, mpz_class(q), tol, policy);
  rec.dist_beta = nearest_integer_distance(beta, mpz_class(q), tol, policy);
  const mpfr_prec_t prec = std::max(rec.dist_alpha.precision(), rec.dist_beta.precision());
  rec.quality = sqrt(Interval::from_int(q, prec)) * max(rec.dist_alpha, rec.dist_beta);
  return rec;
}

Dominance dominance(const ApproximationRecord& record) {
  if (certainly_greater(record.dist_alpha, record.dist_beta)) return Dominance::alpha;
  if (certainly_greater(record.dist_beta, record.dist_alpha)) return Dominance::beta;
  return Dominance::undecided;
}

DirichletSearchResult dirichlet_pair_search(const Irrational& alpha, const Irrational& beta, std::int64_t Q,
                                            const SearchOptions& options) {
  if (Q < 1) throw ConfigError("dirichlet_pair_search: Q must be positive");

  using Item = std::pair<Outcome, ApproximationRecord>;
  const DistanceScreen screen_a(alpha), screen_b(beta);
  auto scan = [&](std::int64_t first, std::int64_t last, std::vector<Item>& out) {
    for (std::int64_t q = first; q <= last; ++q) {
      const double qd = static_cast<double>(q);
      const double floor_dist = std::max(screen_a.lower_bound(qd), screen_b.lower_bound(qd));
      if (floor_dist > 0.0 && floor_dist * floor_dist * qd > 1.0 + 1e-9) continue;
      Outcome outcome = Outcome::unresolved;
      ApproximationRecord rec;
      for (mpfr_prec_t prec = options.precision.start; prec <= options.precision.cap; prec *= 2) {
        Interval da = nearest_int_distance(alpha.enclose_multiple(q, prec));
        Interval db = nearest_int_distance(beta.enclose_multiple(q, prec));
        // max^2 * q < 1  <=>  max < q^{-1/2}
        const Interval lhs = sqr(max(da, db)) * q;
        const Interval one = Interval::from_int(1, prec);
        if (certainly_greater_equal(lhs, one)) {
          outcome = Outcome::reject;
          break;
        }
        if (certainly_less(lhs, one) && da.width() <= options.tol && db.width() <= options.tol) {
          outcome = Outcome::accept;
          rec.q = q;
          rec.quality = sqrt(Interval::from_int(q, prec)) * max(da, db);
          rec.dist_alpha = std::move(da);
          rec.dist_beta = std::move(db);
          break;
        }
      }
      if (outcome == Outcome::reject) continue;
      if (outcome == Outcome::unresolved) rec.q = q;
      out.emplace_back(outcome, std::move(rec));
    }
  };

  DirichletSearchResult result;
  for (auto& [outcome, rec] : chunked<Item>(Q, options.threads, scan)) {
    if (outcome == Outcome::accept) {
      result.records.push_back(std::move(rec));
    } else {
      result.unresolved.push_back(rec.q);
    }
  }
  return result;
}

LacunarySelection select_summable_lacunary(const std::vector<ApproximationRecord>& records, double ratio,
                                           double budget) {
  if (!(ratio > 1.0)) throw ConfigError("select_summable_lacunary: ratio must exceed 1");
  if (!(budget > 0.0)) throw ConfigError("select_summable_lacunary: budget must be positive");
  const mpq_class exact_ratio(ratio);
  const Interval cap = Interval::from_double(budget);
  LacunarySelection out;
  out.inverse_sqrt_sum = Interval(kDefaultPrecision);
  std::int64_t previous = 0;
  for (const auto& rec : records) {
    if (rec.q <= previous) throw ConfigError("select_summable_lacunary: records must be sorted by q");
    if (!out.picked.empty() && mpq_class(rec.q) < exact_ratio * out.picked.back().q) {
      previous = rec.q;
      continue;
    }
    previous = rec.q;
    const Interval term = Interval::from_int(1) / sqrt(Interval::from_int(rec.q));
    Interval candidate = out.inverse_sqrt_sum + term;
    if (!certainly_less_equal(candidate, cap)) continue;
    out.inverse_sqrt_sum = std::move(candidate);
    out.picked.push_back(rec);
  }
  if (out.picked.size() < 2) {
    throw Shortfall("select_summable_lacunary: insufficient candidates (" + std::to_string(out.picked.size()) +
                    " selectable, need at least 2)");
  }
  return out;
}

BadPairEstimate bad_pair_constant(const Irrational& alpha, const Irrational& beta, std::int64_t Q,
                                  const SearchOptions& options) {
  if (Q < 1) throw ConfigError("bad_pair_constant: Q must be positive");

  // Screening pass in doubles. A q needs a certified record when it might
  // lower the running minimum of its chunk, or when the screen cannot decide
  // which distance dominates. Any global record low is also a chunk record
  // low, so the certified pass below sees every q that matters.
  struct ChunkSummary {
    std::vector<std::int64_t> candidates;
    std::vector<std::int64_t> undecided;
    std::int64_t beta_count = 0;
  };
  const DistanceScreen screen_a(alpha), screen_b(beta);
  auto scan = [&](std::int64_t first, std::int64_t last, std::vector<ChunkSummary>& out) {
    ChunkSummary summary;
    double best_upper = std::numeric_limits<double>::infinity();
    for (std::int64_t q = first; q <= last; ++q) {
      const double qd = static_cast<double>(q);
      const auto ea = screen_a.estimate(qd);
      const auto eb = screen_b.estimate(qd);
      if (!ea || !eb) {
        summary.candidates.push_back(q);
        summary.undecided.push_back(q);
        continue;
      }
      const double root = std::sqrt(qd);
      const double lower = root * std::max(ea->dist - ea->margin, eb->dist - eb->margin) * (1 - 1e-12);
      const double upper = root * std::max(ea->dist + ea->margin, eb->dist + eb->margin) * (1 + 1e-12);
      if (lower <= best_upper) summary.candidates.push_back(q);
      best_upper = std::min(best_upper, upper);
      const double gap = eb->dist - ea->dist;
      if (std::abs(gap) <= ea->margin + eb->margin) {
        summary.undecided.push_back(q);
      } else if (gap > 0) {
        ++summary.beta_count;
      }
    }
    out.push_back(std::move(summary));
  };
  const auto chunks = chunked<ChunkSummary>(Q, options.threads, scan);

  BadPairEstimate est;
  double best_mid = 0;
  std::optional<Dominance> argmin_dominance;
  for (const auto& chunk : chunks) {
    est.beta_dominant_count += chunk.beta_count;
    for (const std::int64_t q : chunk.undecided) {
      if (dominance(make_record(alpha, beta, q, options.tol, options.precision)) == Dominance::beta) {
        ++est.beta_dominant_count;
      }
    }
    for (const std::int64_t q : chunk.candidates) {
      const ApproximationRecord rec = make_record(alpha, beta, q, options.tol, options.precision);
      if (est.argmin == 0 || rec.quality.mid() < best_mid) {
        est.value = est.argmin == 0 ? rec.quality : min(est.value, rec.quality);
        est.argmin = rec.q;
        best_mid = rec.quality.mid();
        est.record_lows.emplace_back(rec.q, est.value);
        argmin_dominance = dominance(rec);
      } else {
        est.value = min(est.value, rec.quality);
      }
    }
  }
  est.dominant = argmin_dominance.value_or(Dominance::undecided);
  return est;
}

BadnessProfile badness_profile(const Irrational& x, std::size_t depth) {
  if (depth < 2) throw ConfigError("badness_profile: depth must be at least 2");
  BadnessProfile out;
  const PeriodicExpansion expansion = periodic_expansion(x);
  out.preperiod_length = expansion.preperiod.size();
  out.period_length = expansion.period.size();
  out.max_quotient = 0;
  for (std::size_t k = 1; k < expansion.preperiod.size(); ++k) {
    out.max_quotient = std::max(out.max_quotient, expansion.preperiod[k]);
  }
  for (const auto& a : expansion.period) out.max_quotient = std::max(out.max_quotient, a);

  const auto conv = convergents(continued_fraction(x, depth));
  bool first = true;
  double best_mid = 0;
  for (const auto& c : conv) {
    const Interval value = nearest_integer_distance(x, c.q, 1e-25) * c.q;
    if (first || value.mid() < best_mid) {
      out.argmin = c.q;
      best_mid = value.mid();
    }
    out.min_value = first ? value : min(out.min_value, value);
    first = false;
    out.convergent_values.emplace_back(c.q, value);
  }
  return out;
}

std::vector<SquareApproximation> square_approximation_search(const Irrational& beta, double delta, std::int64_t N,
                                                             const SearchOptions& options) {
  if (!(delta > 0.5 && delta < 2.0 / 3.0)) {
    throw ConfigError("square_approximation_search: delta must lie in (1/2, 2/3)");
  }
  if (N < 1) throw ConfigError("square_approximation_search: N must be positive");
  auto scan = [&](std::int64_t first, std::int64_t last, std::vector<SquareApproximation>& out) {
    for (std::int64_t n = first; n <= last; ++n) {
      const mpz_class square = mpz_class(n) * n;
      for (mpfr_prec_t prec = options.precision.start; prec <= options.precision.cap; prec *= 2) {
        Interval dist = nearest_int_distance(beta.enclose_multiple(square, prec));
        Interval threshold = exp(-Interval::from_double(delta, prec) * log(Interval::from_int(n, prec)));
        if (certainly_less(dist, threshold)) {
          out.push_back({n, std::move(dist), std::move(threshold)});
          break;
        }
        if (certainly_greater_equal(dist, threshold)) break;
      }
    }
  };
  return chunked<SquareApproximation>(N, options.threads, scan);
}

bool is_dependence(const Irrational& alpha, const Irrational& beta, const mpz_class& m, const mpz_class& n,
                   const mpz_class& p) {
  if (alpha.d() != beta.d()) return m == 0 && n == 0 && p == 0;
  const mpq_class irrational_part = fraction(m * alpha.b(), alpha.c()) + fraction(n * beta.b(), beta.c());
  const mpq_class rational_part =
      fraction(m * alpha.a(), alpha.c()) + fraction(n * beta.a(), beta.c()) + mpq_class(p);
  return sgn(irrational_part) == 0 && sgn(rational_part) == 0;
}

DependenceSearch integer_dependence_search(const Irrational& alpha, const Irrational& beta, std::int64_t B) {
  if (B < 1) throw ConfigError("integer_dependence_search: B must be positive");
  DependenceSearch out;
  if (alpha.d() != beta.d()) {
    out.proven_independent = true;
    out.reason = "alpha lies in Q(sqrt(" + alpha.d().get_str() + ")) and beta in Q(sqrt(" + beta.d().get_str() +
                 ")); 1, sqrt(d1), sqrt(d2) are linearly independent over Q";
    return out;
  }
  // For fixed (m, n) at most one p can work, so scanning (m, n) and solving
  // for p visits every admissible triple of the box.
  using Key = std::tuple<mpz_class, mpz_class, mpz_class, mpz_class>;
  std::optional<Key> best;
  for (std::int64_t m = 0; m <= B; ++m) {
    for (std::int64_t n = -B; n <= B; ++n) {
      if (m == 0 && n <= 0) continue;  // m > 0, or m == 0 with n > 0
      const mpq_class irrational_part =
          fraction(m * alpha.b(), alpha.c()) + fraction(n * beta.b(), beta.c());
      if (sgn(irrational_part) != 0) continue;
      const mpq_class p = -(fraction(m * alpha.a(), alpha.c()) + fraction(n * beta.a(), beta.c()));
      if (p.get_den() != 1 || abs(p.get_num()) > B) continue;
      const mpz_class pm(m), pn(n), pp = p.get_num();
      Key key{abs(pm) + abs(pn) + abs(pp), abs(pm), abs(pn), abs(pp)};
      if (!best || key < *best) {
        best = key;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), pm.get_mpz_t(), pn.get_mpz_t());
        out.dependence = Dependence{pm, pn, pp, g};
      }
    }
  }
  if (!out.dependence) out.reason = "no relation with coefficients bounded by " + std::to_string(B);
  return out;
}

}  // namespace coblab

#include "coblab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <random>

#include "coblab/errors.hpp"
#include "coblab/shift_example.hpp"

namespace coblab {

namespace {

using Row = std::vector<std::string>;

void add_interval(Row& row, const Interval& x) {
  row.push_back(lower_string(x));
  row.push_back(upper_string(x));
}

std::vector<std::string> interval_columns(const std::string& name) { return {name + "_lo", name + "_hi"}; }

Table make_table(std::string name, std::initializer_list<std::vector<std::string>> groups) {
  Table t{std::move(name), {}, {}};
  for (const auto& g : groups) t.columns.insert(t.columns.end(), g.begin(), g.end());
  return t;
}

std::string resolve_task(const ExperimentConfig& c) {
  const auto& tasks = command_tasks(c.command);
  if (c.task.empty()) return tasks.front();
  if (std::find(tasks.begin(), tasks.end(), c.task) == tasks.end()) {
    throw ConfigError("unknown task '" + c.task + "' for command '" + c.command + "'");
  }
  return c.task;
}

SearchOptions search_options(const ExperimentConfig& c) {
  SearchOptions o;
  o.tol = c.tol;
  o.threads = c.threads;
  return o;
}

ConstructionOptions construction_options(const ExperimentConfig& c) {
  return {c.ratio, c.budget, c.tol, c.threads};
}

SparseFourierSeries seeded_polynomial(const ExperimentConfig& c, std::int64_t radius) {
  std::mt19937_64 rng(c.seed);
  return random_centered_polynomial(rng, radius);
}

Table series_table(const std::string& name, const SparseFourierSeries& f) {
  Table t = make_table(name, {{"n"}, interval_columns("re"), interval_columns("im"), interval_columns("abs")});
  for (const auto& [n, z] : f.coefficients()) {
    Row row{std::to_string(n)};
    add_interval(row, z.re);
    add_interval(row, z.im);
    add_interval(row, z.abs());
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table criterion_table(const std::string& name, const CriterionSum& s) {
  Table t = make_table(name, {{"n"}, interval_columns("term"), interval_columns("cumulative")});
  for (const auto& term : s.terms) {
    Row row{std::to_string(term.n)};
    add_interval(row, term.term);
    add_interval(row, term.cumulative);
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string describe(const std::string& name, const CriterionSum& s) {
  if (s.divergent) return name + ": divergent (" + s.reason + ")";
  return name + ": " + s.value.to_string(17);
}

void add_certificates(Report& r, const std::vector<Certificate>& certs) {
  r.certificates.insert(r.certificates.end(), certs.begin(), certs.end());
  for (const auto& c : certs) r.summary.push_back(std::string(c.verdict() ? "PASS " : "FAIL ") + c.title);
}

// --- approx ------------------------------------------------------------------

void approx_dirichlet(const ExperimentConfig& c, Report& r) {
  const Irrational alpha = Irrational::parse(c.alpha);
  const Irrational beta = Irrational::parse(c.beta);
  const auto search = dirichlet_pair_search(alpha, beta, c.Q, search_options(c));
  std::vector<std::int64_t> picked;
  try {
    const auto sel = select_summable_lacunary(search.records, c.ratio, c.budget);
    for (const auto& rec : sel.picked) picked.push_back(rec.q);
    r.result["lacunary"] = picked;
    r.result["inverse_sqrt_sum"] = sel.inverse_sqrt_sum;
  } catch (const Shortfall& e) {
    r.result["lacunary_shortfall"] = e.what();
  }
  r.result["records"] = search.records.size();
  r.result["unresolved"] = search.unresolved;

  Table t = make_table("dirichlet", {{"q"}, interval_columns("dist_alpha"), interval_columns("dist_beta"),
                                     interval_columns("quality"), {"dominance", "lacunary"}});
  for (const auto& rec : search.records) {
    Row row{std::to_string(rec.q)};
    add_interval(row, rec.dist_alpha);
    add_interval(row, rec.dist_beta);
    add_interval(row, rec.quality);
    row.push_back(to_string(dominance(rec)));
    row.push_back(std::find(picked.begin(), picked.end(), rec.q) != picked.end() ? "1" : "0");
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  r.summary.push_back("Dirichlet records q <= " + std::to_string(c.Q) + ": " + std::to_string(search.records.size()));
  r.summary.push_back("lacunary picks: " + std::to_string(picked.size()));
}

void approx_bad_pair(const ExperimentConfig& c, Report& r) {
  const auto est = bad_pair_constant(Irrational::parse(c.alpha), Irrational::parse(c.beta), c.Q, search_options(c));
  r.result["value"] = est.value;
  r.result["argmin"] = est.argmin;
  r.result["dominant"] = to_string(est.dominant);
  r.result["beta_dominant_count"] = est.beta_dominant_count;
  Table t = make_table("record_lows", {{"Q"}, interval_columns("minimum")});
  for (const auto& [q, v] : est.record_lows) {
    Row row{std::to_string(q)};
    add_interval(row, v);
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  r.summary.push_back("finite-depth C over q <= " + std::to_string(c.Q) + ": " + est.value.to_string(17) +
                      " at q = " + std::to_string(est.argmin));
}

void approx_squares(const ExperimentConfig& c, Report& r) {
  const auto hits = square_approximation_search(Irrational::parse(c.beta), c.delta, c.N, search_options(c));
  Table t = make_table("squares", {{"n"}, interval_columns("dist"), interval_columns("threshold")});
  std::vector<std::int64_t> ns;
  for (const auto& h : hits) {
    ns.push_back(h.n);
    Row row{std::to_string(h.n)};
    add_interval(row, h.dist);
    add_interval(row, h.threshold);
    t.rows.push_back(std::move(row));
  }
  r.result["n"] = ns;
  r.tables.push_back(std::move(t));
  r.summary.push_back("n <= " + std::to_string(c.N) + " with ||n^2 beta|| < n^-delta: " + std::to_string(ns.size()));
}

void approx_cf(const ExperimentConfig& c, Report& r) {
  const Irrational x = Irrational::parse(c.alpha);
  const auto depth = static_cast<std::size_t>(c.depth);
  const auto quotients = continued_fraction(x, depth);
  const auto conv = convergents(quotients);
  const auto periodic = periodic_expansion(x);
  const auto profile = badness_profile(x, depth);
  auto strings = [](const std::vector<mpz_class>& v) {
    std::vector<std::string> out;
    for (const auto& z : v) out.push_back(z.get_str());
    return out;
  };
  r.result["value"] = x.to_string();
  r.result["quotients"] = strings(quotients);
  r.result["preperiod"] = strings(periodic.preperiod);
  r.result["period"] = strings(periodic.period);
  r.result["max_quotient"] = profile.max_quotient.get_str();
  r.result["min_q_dist"] = profile.min_value;

  Table t = make_table("convergents", {{"k", "a_k", "p_k", "q_k"}, interval_columns("q_dist")});
  for (std::size_t k = 0; k < conv.size(); ++k) {
    Row row{std::to_string(k), quotients[k].get_str(), conv[k].p.get_str(), conv[k].q.get_str()};
    if (k < profile.convergent_values.size()) {
      add_interval(row, profile.convergent_values[k].second);
    } else {
      row.insert(row.end(), {"", ""});
    }
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  r.summary.push_back(x.to_string() + " has period length " + std::to_string(periodic.period.size()) +
                      " and sup a_k = " + profile.max_quotient.get_str());
}

void approx_dependence(const ExperimentConfig& c, Report& r) {
  const auto found = integer_dependence_search(Irrational::parse(c.alpha), Irrational::parse(c.beta), c.N);
  r.result["proven_independent"] = found.proven_independent;
  r.result["reason"] = found.reason;
  if (found.dependence) {
    const auto& d = *found.dependence;
    r.result["dependence"] = {{"m", d.m.get_str()}, {"n", d.n.get_str()}, {"p", d.p.get_str()}, {"gcd", d.gcd_mn.get_str()}};
    r.summary.push_back("dependence m alpha + n beta + p = 0 with (m, n, p) = (" + d.m.get_str() + ", " + d.n.get_str() +
                        ", " + d.p.get_str() + ")");
  } else {
    r.summary.push_back("no dependence with |m|, |n|, |p| <= " + std::to_string(c.N) +
                        (found.proven_independent ? " (proven independent)" : ""));
  }
}

// --- construct -------------------------------------------------------------

void describe_construction(const ConstructionResult& res, Report& r) {
  r.result = res;
  Table t = make_table("q_sequence", {{"q"}, interval_columns("f"), interval_columns("g_abs"), interval_columns("h_abs")});
  for (const auto& rec : res.q_sequence) {
    Row row{std::to_string(rec.q)};
    add_interval(row, res.f.coeff(rec.q).re);
    add_interval(row, res.g.coeff(rec.q).abs());
    add_interval(row, res.h.coeff(rec.q).abs());
    t.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(t));
  add_certificates(r, res.certificates);
  r.summary.push_back(std::string("construction ") + (res.verified() ? "verified" : "NOT verified") + " with " +
                      std::to_string(res.q_sequence.size()) + " terms");
}

void construct_joint(const ExperimentConfig& c, Report& r) {
  const auto res = build_joint_not_double(Irrational::parse(c.alpha), Irrational::parse(c.beta), c.K, c.Q,
                                          construction_options(c));
  describe_construction(res, r);
}

void construct_bad_pair(const ExperimentConfig& c, Report& r) {
  std::vector<double> a;
  for (std::int64_t k = 1; k <= c.K; ++k) a.push_back(1.0 / static_cast<double>(k * k));
  const auto res = build_bad_pair_family(Irrational::parse(c.alpha), Irrational::parse(c.beta), a, c.Q,
                                         construction_options(c));
  describe_construction(res, r);
}

void construct_dependent(const ExperimentConfig& c, Report& r) {
  const Irrational alpha = Irrational::parse(c.alpha);
  const Irrational beta = Irrational::parse(c.beta);
  const auto found = integer_dependence_search(alpha, beta, c.N);
  if (!found.dependence) throw Shortfall("no integer dependence with |m|, |n|, |p| <= " + std::to_string(c.N));
  const auto lift = lift_dependent_pair(alpha, beta, *found.dependence, seeded_polynomial(c, c.K));
  const auto& d = lift.dependence;
  r.result["dependence"] = {{"m", d.m.get_str()}, {"n", d.n.get_str()}, {"p", d.p.get_str()}};
  r.result["gamma"] = lift.gamma.to_string();
  r.result["power_alpha"] = lift.power_alpha;
  r.result["power_beta"] = lift.power_beta;
  r.result["beta_inverted"] = lift.beta_inverted;
  r.result["residual"] = lift.residual;
  r.result["residual_t"] = lift.lift.residual_t;
  r.result["residual_s"] = lift.lift.residual_s;
  r.result["seed"] = c.seed;
  r.result["f"] = lift.f;
  r.result["g"] = lift.g;
  r.tables.push_back(series_table("f", lift.f));
  r.tables.push_back(series_table("g", lift.g));
  r.summary.push_back("gamma = " + lift.gamma.to_string() + ", T_alpha = R^" + std::to_string(lift.power_alpha) +
                      ", T_beta" + (lift.beta_inverted ? "^-1" : "") + " = R^" + std::to_string(lift.power_beta));
  r.summary.push_back("joint identity residual " + format_double(lift.residual));
}

// --- check -------------------------------------------------------------------

void check_bad_joint_task(const ExperimentConfig& c, Report& r) {
  const auto f = seeded_polynomial(c, c.K);
  const Irrational alpha = Irrational::parse(c.alpha);
  add_certificates(r, {check_bad_joint(f, NormMode::c_norm, alpha), check_bad_joint(f, NormMode::l2_norm, alpha)});
  r.result["seed"] = c.seed;
  r.tables.push_back(series_table("f", f));
}

void check_mur(const ExperimentConfig& c, Report& r) {
  std::vector<double> a;
  for (std::int64_t k = 1; k <= c.N; ++k) {
    a.push_back(1.0 / (static_cast<double>(k) * std::pow(std::log(static_cast<double>(k + 1)), c.gamma)));
  }
  // sum_{k > N} k a_k^2 <= int_N^inf dx / (x log^{2 gamma} x) = log(N)^{1 - 2 gamma} / (2 gamma - 1).
  TailInfo tail;
  if (2.0 * c.gamma <= 1.0) {
    tail.kind = TailKind::divergent;
  } else if (c.N >= 2) {
    tail.kind = TailKind::bounded;
    tail.bound = std::nextafter(std::pow(std::log(static_cast<double>(c.N)), 1.0 - 2.0 * c.gamma) / (2.0 * c.gamma - 1.0) *
                                    (1.0 + 1e-12),
                                HUGE_VAL);
  }
  add_certificates(r, {check_mur_envelope(a, tail)});
  r.result["envelope"] = "a_k = 1 / (k log(k+1)^gamma)";
}

void check_double_bad_task(const ExperimentConfig& c, Report& r) {
  std::vector<std::pair<std::int64_t, std::complex<double>>> coeffs{{1, {1.0, 0.0}}};
  for (std::int64_t k = 2; k <= c.N; ++k) {
    const double x = static_cast<double>(k);
    coeffs.push_back({k, {1.0 / (x * x * std::pow(std::log(x), c.gamma)), 0.0}});
  }
  add_certificates(r, {check_double_bad(SparseFourierSeries::from_coefficients(coeffs), c.gamma)});
  r.result["series"] = "f_1 = 1, f_k = 1 / (k^2 log(k)^gamma) for 2 <= k <= N";
}

void check_witness(const ExperimentConfig& c, Report& r) {
  const Irrational beta = Irrational::parse(c.beta);
  const auto conv = convergents(continued_fraction(beta, static_cast<std::size_t>(c.depth)));
  std::vector<std::pair<std::int64_t, std::complex<double>>> coeffs;
  for (const auto& cv : conv) {
    if (!cv.q.fits_slong_p()) break;
    const std::int64_t q = cv.q.get_si();
    if (q < 2 || q > (std::int64_t{1} << 40)) continue;
    if (std::none_of(coeffs.begin(), coeffs.end(), [&](const auto& e) { return e.first == q; })) {
      coeffs.push_back({q, {1.0 / std::sqrt(static_cast<double>(q)), 0.0}});
    }
  }
  add_certificates(r, {large_coeff_witness(SparseFourierSeries::from_coefficients(coeffs), beta,
                                           static_cast<std::size_t>(c.depth))});
  r.result["series"] = "f_q = q^(-1/2) at convergent denominators q >= 2 of beta";
}

void check_petersen(const ExperimentConfig& c, Report& r) {
  const auto f = seeded_polynomial(c, c.K);
  const auto s = petersen_series(f, Irrational::parse(c.alpha), Irrational::parse(c.beta));
  r.result["seed"] = c.seed;
  r.result["petersen"] = s;
  r.tables.push_back(criterion_table("petersen", s));
  r.summary.push_back(describe("petersen series", s));
}

void check_kac_salem(const ExperimentConfig& c, Report& r) {
  std::vector<std::pair<std::int64_t, double>> mags;
  for (std::int64_t k = 1; k <= c.N; ++k) mags.push_back({k, 1.0 / static_cast<double>(k * k)});
  const auto ks = kac_salem_series(mags, Irrational::parse(c.alpha));
  r.result["series"] = "|phi_k| = k^-2 for 1 <= k <= N";
  r.result["sum"] = ks.sum;
  r.result["entropy"] = ks.entropy;
  r.tables.push_back(criterion_table("kac_salem", ks.sum));
  r.summary.push_back(describe("sum |phi_k| / |sin(pi k x)|", ks.sum));
  r.summary.push_back("entropy " + ks.entropy.to_string(17));
}

// --- spectral ----------------------------------------------------------------

void spectral_task(const ExperimentConfig& c, Report& r, bool from_construction) {
  const Irrational alpha = Irrational::parse(c.alpha);
  const Irrational beta = Irrational::parse(c.beta);
  SparseFourierSeries phi;
  std::optional<double> threshold;
  if (from_construction) {
    const auto res = build_joint_not_double(alpha, beta, c.K, c.Q, construction_options(c));
    phi = apply_coboundary(res.f, alpha);
    threshold = static_cast<double>(c.K) / (4.0 * M_PI * M_PI);
    r.result["q_sequence"] = [&] {
      std::vector<std::int64_t> q;
      for (const auto& rec : res.q_sequence) q.push_back(rec.q);
      return q;
    }();
  } else {
    phi = seeded_polynomial(c, c.K);
    r.result["seed"] = c.seed;
  }
  const auto m = spectral_measure(phi, alpha, beta);
  const auto ia = coboundary_integral(m, Side::alpha);
  const auto ib = coboundary_integral(m, Side::beta);
  const auto joint = joint_criterion_sum(m);
  const auto dbl = double_criterion_sum(m, threshold);
  r.result["total_mass"] = m.total_mass();
  r.result["integral_alpha"] = ia;
  r.result["integral_beta"] = ib;
  r.result["joint"] = joint.sum;
  r.result["joint_cross_check"] = joint.cross_check;
  r.result["double"] = dbl.sum;
  if (threshold) {
    r.result["double_threshold"] = *threshold;
    r.result["double_threshold_exceeded"] = dbl.threshold_exceeded;
  }

  Table atoms = make_table("atoms", {{"n"}, interval_columns("mass"), interval_columns("divisor_alpha"),
                                     interval_columns("divisor_beta")});
  for (const auto& a : m.atoms) {
    Row row{std::to_string(a.n)};
    add_interval(row, a.mass);
    add_interval(row, a.divisor_alpha);
    add_interval(row, a.divisor_beta);
    atoms.rows.push_back(std::move(row));
  }
  r.tables.push_back(std::move(atoms));
  r.tables.push_back(criterion_table("joint_terms", joint.sum));
  r.tables.push_back(criterion_table("double_terms", dbl.sum));
  r.summary.push_back(describe("alpha coboundary integral", ia));
  r.summary.push_back(describe("beta coboundary integral", ib));
  r.summary.push_back(describe("joint criterion", joint.sum));
  r.summary.push_back(describe("double criterion", dbl.sum));
  if (threshold) {
    r.summary.push_back("double criterion exceeds K/(4 pi^2) = " + format_double(*threshold) + ": " +
                        (dbl.threshold_exceeded ? "yes" : "no"));
  }
}

// --- rates -------------------------------------------------------------------

void rates_doubling_tripling(const ExperimentConfig& c, Report& r) {
  Table t = make_table("doubling_tripling", {{"n", "value", "value_double", "products", "distinct"}});
  bool all_one = true;
  for (std::int64_t n = 1; n <= c.N; ++n) {
    const auto v = doubling_tripling_variance(n);
    all_one = all_one && v.value == 1;
    t.rows.push_back({std::to_string(n), v.value.get_str(), format_double(v.value.get_d()), std::to_string(v.products),
                      std::to_string(v.distinct)});
  }
  r.tables.push_back(std::move(t));
  r.result["all_equal_one"] = all_one;
  r.summary.push_back(std::string("variance equals 1 for every n <= ") + std::to_string(c.N) + ": " +
                      (all_one ? "yes" : "no"));
}

void rates_cesaro(const ExperimentConfig& c, Report& r) {
  std::vector<std::int64_t> ns;
  for (std::int64_t n = 1; n <= c.N; n *= 2) ns.push_back(n);
  const auto f = seeded_polynomial(c, c.K);
  const auto rows = cesaro_rate_profile(f, Irrational::parse(c.alpha), Irrational::parse(c.beta), ns);
  Table t = make_table("cesaro", {{"n"}, interval_columns("norm"), interval_columns("per_n"), interval_columns("per_n2")});
  for (const auto& row : rows) {
    Row out{std::to_string(row.n)};
    add_interval(out, row.norm);
    add_interval(out, row.per_n);
    add_interval(out, row.per_n2);
    t.rows.push_back(std::move(out));
  }
  r.tables.push_back(std::move(t));
  r.result["seed"] = c.seed;
  r.summary.push_back("Cesaro profile at " + std::to_string(ns.size()) + " values of n");
}

// --- shift -------------------------------------------------------------------

void shift_task(const ExperimentConfig& c, Report& r) {
  const LatticeFunction h = build_h(c.p);
  const auto norm = lp_partial_norm(h, c.p, c.K, c.K);
  const auto cert = divergence_certificate(c.p, c.K, c.r);
  const auto grid = build_q(h, c.N, c.N);
  r.result["kind"] = h.kind == LatticeFunction::Kind::power ? "power" : "log-power";
  r.result["a"] = h.a;
  r.result["lp_partial"] = norm.partial;
  r.result["lp_tail_bound"] = norm.tail_bound;
  r.result["lp_total"] = norm.total;
  r.result["q_bounds_certified"] = grid.bounds_certified;
  r.result["roundtrip_residual"] = roundtrip_residual(grid, h);
  add_certificates(r, {cert});

  Table t = make_table("q_grid", {{"j", "k"}, interval_columns("q")});
  for (std::int64_t j = 1; j <= c.N; ++j) {
    for (std::int64_t k = 1; k <= c.N; ++k) {
      Row row{std::to_string(j), std::to_string(k)};
      add_interval(row, grid.at(j, k));
      t.rows.push_back(std::move(row));
    }
  }
  r.tables.push_back(std::move(t));
  r.summary.push_back("l_p norm of h: " + norm.total.to_string(17));
}

// --- selftest ----------------------------------------------------------------

void selftest(const ExperimentConfig& c, Report& r) {
  std::vector<std::pair<std::string, std::function<bool()>>> checks;
  const Irrational alpha = Irrational::parse("sqrt(2)-1");
  const Irrational beta = Irrational::parse("sqrt(3)-1");

  checks.push_back({"pi enclosure", [] { return Interval::from_bounds(3.14159265358979, 3.1415926535898).contains(Interval::pi()) &&
                                                 Interval::pi().width() < 1e-30; }});
  checks.push_back({"perfect-square surd rejected", [] {
                      try {
                        Irrational::parse("(1+2*sqrt(4))/3");
                      } catch (const ConfigError&) {
                        return true;
                      }
                      return false;
                    }});
  checks.push_back({"continued fraction of sqrt(3)", [] {
                      const auto cf = continued_fraction(Irrational::parse("sqrt(3)"), 4);
                      return cf == std::vector<mpz_class>{1, 1, 2, 1, 2};
                    }});
  checks.push_back({"Dirichlet search finds 2 and 5", [&] {
                      const auto s = dirichlet_pair_search(alpha, beta, 1000);
                      auto has = [&](std::int64_t q) {
                        return std::any_of(s.records.begin(), s.records.end(), [&](const auto& x) { return x.q == q; });
                      };
                      return has(2) && has(5);
                    }});
  checks.push_back({"coboundary roundtrip", [&] {
                      std::mt19937_64 rng(c.seed);
                      for (int i = 0; i < 20; ++i) {
                        const auto f = random_centered_polynomial(rng, 10);
                        const auto g = solve_coboundary(f, alpha).series;
                        if (max_relative_difference(apply_coboundary(g, alpha), f) > 1e-12) return false;
                      }
                      return true;
                    }});
  checks.push_back({"double coboundary sums bounded by 4 ||h||", [&] {
                      std::mt19937_64 rng(c.seed + 1);
                      for (int i = 0; i < 20; ++i) {
                        const auto h = random_centered_polynomial(rng, 10);
                        const double bound = 4.0 * h.l2_norm().upper() + 1e-9;
                        const ErgodicSumEvaluator e(apply_coboundary(apply_coboundary(h, alpha), beta), alpha, beta);
                        for (std::int64_t n = 1; n <= 200; n += 7) {
                          if (e.double_sum(n, n) > bound) return false;
                        }
                      }
                      return true;
                    }});
  checks.push_back({"Browder sums bounded by 2 ||g||", [&] {
                      std::mt19937_64 rng(c.seed + 2);
                      for (int i = 0; i < 20; ++i) {
                        const auto g = random_centered_polynomial(rng, 10);
                        const double bound = 2.0 * g.l2_norm().upper() + 1e-9;
                        const ErgodicSumEvaluator e(apply_coboundary(g, alpha), alpha);
                        for (std::int64_t n = 1; n <= 200; ++n) {
                          if (e.browder(n) > bound) return false;
                        }
                      }
                      return true;
                    }});
  checks.push_back({"doubling-tripling variance is 1", [] {
                      for (std::int64_t n = 1; n <= 16; ++n) {
                        if (doubling_tripling_variance(n).value != 1) return false;
                      }
                      return true;
                    }});
  checks.push_back({"shift q(1,1) = zeta(3/2) - 1", [] {
                      return build_q(build_h(2.0), 1, 1).at(1, 1).contains(1.612375348685488);
                    }});
  checks.push_back({"config JSON roundtrip", [&] {
                      Json j = c;
                      return j.get<ExperimentConfig>() == c;
                    }});

  Table t = make_table("selftest", {{"check", "result"}});
  bool all = true;
  for (const auto& [name, fn] : checks) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    all = all && ok;
    t.rows.push_back({name, ok ? "pass" : "fail"});
    r.summary.push_back(std::string(ok ? "PASS " : "FAIL ") + name);
  }
  r.tables.push_back(std::move(t));
  r.result["passed"] = all;
  r.exit_status = all ? kExitSuccess : kExitCertificationFailure;
}

using Handler = std::function<void(const ExperimentConfig&, Report&)>;

const std::map<std::string, std::vector<std::pair<std::string, Handler>>>& handlers() {
  static const std::map<std::string, std::vector<std::pair<std::string, Handler>>> table = {
      {"approx",
       {{"dirichlet", approx_dirichlet},
        {"bad-pair", approx_bad_pair},
        {"squares", approx_squares},
        {"cf", approx_cf},
        {"dependence", approx_dependence}}},
      {"construct", {{"joint", construct_joint}, {"bad-pair", construct_bad_pair}, {"dependent", construct_dependent}}},
      {"check",
       {{"bad-joint", check_bad_joint_task},
        {"mur", check_mur},
        {"double-bad", check_double_bad_task},
        {"witness", check_witness},
        {"petersen", check_petersen},
        {"kac-salem", check_kac_salem}}},
      {"spectral",
       {{"construction", [](const ExperimentConfig& c, Report& r) { spectral_task(c, r, true); }},
        {"random", [](const ExperimentConfig& c, Report& r) { spectral_task(c, r, false); }}}},
      {"rates", {{"cesaro", rates_cesaro}, {"doubling-tripling", rates_doubling_tripling}}},
      {"shift", {{"certificate", shift_task}}},
      {"selftest", {{"all", selftest}}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& command_tasks(const std::string& command) {
  static const std::map<std::string, std::vector<std::string>> names = [] {
    std::map<std::string, std::vector<std::string>> out;
    for (const auto& [cmd, list] : handlers()) {
      for (const auto& entry : list) out[cmd].push_back(entry.first);
    }
    return out;
  }();
  const auto it = names.find(command);
  if (it == names.end()) throw ConfigError("unknown command '" + command + "'");
  return it->second;
}

Report execute(const ExperimentConfig& config) {
  config.validate();
  ExperimentConfig c = config;
  if (c.command == "rates" && c.doubling_tripling) c.task = "doubling-tripling";
  const std::string task = resolve_task(c);
  Report report;
  report.config = c;
  report.config.task = task;
  for (const auto& [name, fn] : handlers().at(c.command)) {
    if (name == task) fn(report.config, report);
  }
  return report;
}

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  auto fail = [&](int code, const char* kind, const std::string& message) {
    err << Json{{"error", kind}, {"exit_code", code}, {"message", message}}.dump() << "\n";
    return code;
  };
  try {
    const Report report = execute(config);
    write_report(report, out);
    return report.exit_status;
  } catch (const ConfigError& e) {
    return fail(kExitConfigError, "config", e.what());
  } catch (const Shortfall& e) {
    return fail(kExitShortfall, "shortfall", e.what());
  } catch (const CertificationFailure& e) {
    return fail(kExitCertificationFailure, "certification-failure", e.what());
  } catch (const PrecisionExhausted& e) {
    return fail(kExitCertificationFailure, "precision-exhausted", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kExitConfigError, "config", e.what());
  } catch (const std::exception& e) {
    return fail(kExitCertificationFailure, "internal", e.what());
  }
}

}  // namespace coblab

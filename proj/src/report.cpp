#include "coblab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "coblab/errors.hpp"

#ifndef COBLAB_VERSION
#define COBLAB_VERSION "unknown"
#endif

namespace coblab {

namespace {

const std::set<std::string> kCommands = {"approx", "construct", "check", "spectral", "rates", "shift", "selftest"};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path.string());
  file << content;
  if (!file) throw ConfigError("cannot write " + path.string());
}

}  // namespace

std::string to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::csv:
      return "csv";
    case ReportFormat::json:
      return "json";
    case ReportFormat::text:
      return "text";
  }
  return "json";
}

ReportFormat parse_format(const std::string& s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  if (s == "text") return ReportFormat::text;
  throw ConfigError("unknown report format '" + s + "'");
}

void ExperimentConfig::validate() const {
  if (!kCommands.count(command)) throw ConfigError("unknown command '" + command + "'");
  if (Q < 1 || K < 1 || N < 1 || depth < 1) throw ConfigError("Q, K, N and depth must be positive");
  if (!(tol > 0.0 && tol < 1.0)) throw ConfigError("tol must lie in (0, 1)");
  if (!(ratio > 1.0) || !std::isfinite(ratio)) throw ConfigError("ratio must be a finite real > 1");
  if (!(budget > 0.0) || !std::isfinite(budget)) throw ConfigError("budget must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be positive");
  if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("p must be a finite real >= 1");
  if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("r must be nonnegative");
  if (threads < 1) throw ConfigError("threads must be positive");
}

void to_json(Json& j, const ExperimentConfig& c) {
  j = Json{{"command", c.command},
           {"task", c.task},
           {"alpha", c.alpha},
           {"beta", c.beta},
           {"Q", c.Q},
           {"K", c.K},
           {"N", c.N},
           {"depth", c.depth},
           {"delta", c.delta},
           {"gamma", c.gamma},
           {"p", c.p},
           {"r", c.r},
           {"ratio", c.ratio},
           {"budget", c.budget},
           {"tol", c.tol},
           {"out", c.out},
           {"format", to_string(c.format)},
           {"seed", c.seed},
           {"threads", c.threads},
           {"doubling_tripling", c.doubling_tripling}};
}

void from_json(const Json& j, ExperimentConfig& c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "command") c.command = value.get<std::string>();
      else if (key == "task") c.task = value.get<std::string>();
      else if (key == "alpha") c.alpha = value.get<std::string>();
      else if (key == "beta") c.beta = value.get<std::string>();
      else if (key == "Q") c.Q = value.get<std::int64_t>();
      else if (key == "K") c.K = value.get<std::int64_t>();
      else if (key == "N") c.N = value.get<std::int64_t>();
      else if (key == "depth") c.depth = value.get<std::int64_t>();
      else if (key == "delta") c.delta = value.get<double>();
      else if (key == "gamma") c.gamma = value.get<double>();
      else if (key == "p") c.p = value.get<double>();
      else if (key == "r") c.r = value.get<double>();
      else if (key == "ratio") c.ratio = value.get<double>();
      else if (key == "budget") c.budget = value.get<double>();
      else if (key == "tol") c.tol = value.get<double>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "format") c.format = parse_format(value.get<std::string>());
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "threads") c.threads = value.get<unsigned>();
      else if (key == "doubling_tripling") c.doubling_tripling = value.get<bool>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

std::string lower_string(const Interval& x, int digits) { return x.lo().to_string(digits, MPFR_RNDD); }
std::string upper_string(const Interval& x, int digits) { return x.hi().to_string(digits, MPFR_RNDU); }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

void to_json(Json& j, const Interval& x) { j = Json{{"lo", lower_string(x)}, {"hi", upper_string(x)}}; }

void to_json(Json& j, const CertificateEntry& e) {
  j = Json{{"description", e.description},
           {"enclosure", e.enclosure},
           {"comparison", to_string(e.comparison)},
           {"threshold", e.threshold},
           {"holds", e.holds}};
}

void to_json(Json& j, const Certificate& c) {
  Json values = Json::array();
  for (const auto& [name, value] : c.values) values.push_back(Json{{"name", name}, {"value", value}});
  j = Json{{"kind", to_string(c.kind)},
           {"title", c.title},
           {"verdict", c.verdict()},
           {"entries", c.entries},
           {"values", values},
           {"notes", c.notes}};
}

void to_json(Json& j, const ApproximationRecord& r) {
  j = Json{{"q", r.q},
           {"dist_alpha", r.dist_alpha},
           {"dist_beta", r.dist_beta},
           {"quality", r.quality},
           {"dominance", to_string(dominance(r))}};
}

void to_json(Json& j, const SparseFourierSeries& f) {
  j = Json::array();
  for (const auto& [n, c] : f.coefficients()) j.push_back(Json{{"n", n}, {"re", c.re}, {"im", c.im}});
}

void to_json(Json& j, const SmallDivisorReport& r) {
  j = Json{{"precision_used", r.precision_used},
           {"escalations", r.escalations},
           {"divisor_encloses_zero", r.divisor_encloses_zero}};
}

void to_json(Json& j, const CriterionSum& s) {
  j = Json{{"divergent", s.divergent}, {"terms", s.terms.size()}};
  if (s.divergent) {
    j["reason"] = s.reason;
  } else {
    j["value"] = s.value;
  }
}

void to_json(Json& j, const ConstructionResult& r) {
  Json q = Json::array();
  for (const auto& rec : r.q_sequence) q.push_back(rec);
  j = Json{{"alpha", r.alpha.to_string()},
           {"beta", r.beta.to_string()},
           {"ratio", r.ratio},
           {"verified", r.verified()},
           {"q_sequence", q},
           {"f", r.f},
           {"g", r.g},
           {"h", r.h},
           {"certificates", r.certificates},
           {"notes", r.notes}};
  if (r.tail_bound) j["tail_bound"] = *r.tail_bound;
}

Json report_header(const ExperimentConfig& config) {
  const PrecisionPolicy policy;
  return Json{{"schema_version", kReportSchemaVersion},
              {"tool", "coblab"},
              {"tool_version", COBLAB_VERSION},
              {"precision", {{"start_bits", policy.start}, {"cap_bits", policy.cap}}},
              {"config", config}};
}

std::string render_json(const Report& report) {
  Json tables = Json::array();
  for (const auto& t : report.tables) tables.push_back(Json{{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
  Json doc{{"header", report_header(report.config)},
           {"summary", report.summary},
           {"result", report.result},
           {"certificates", report.certificates},
           {"tables", tables}};
  return doc.dump(2) + "\n";
}

std::string render_csv(const Report& report, const Table& table) {
  const Json header = report_header(report.config);
  std::ostringstream out;
  out << "# tool=coblab " << header["tool_version"].get<std::string>() << "\n";
  out << "# schema_version=" << kReportSchemaVersion << "\n";
  out << "# precision=" << header["precision"].dump() << "\n";
  out << "# config=" << header["config"].dump() << "\n";
  out << "# table=" << table.name << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\n";
  }
  return out.str();
}

std::string render_certificate_text(const Certificate& c) {
  std::ostringstream out;
  out << (c.verdict() ? "[PASS] " : "[FAIL] ") << to_string(c.kind) << ": " << c.title << "\n";
  for (const auto& e : c.entries) {
    out << "  " << (e.holds ? "holds " : "FAILS ") << e.description << "\n"
        << "        " << e.enclosure.to_string(17) << " " << to_string(e.comparison) << " "
        << e.threshold.to_string(17) << "\n";
  }
  for (const auto& [name, value] : c.values) out << "  value " << name << " = " << value.to_string(17) << "\n";
  for (const auto& note : c.notes) out << "  note: " << note << "\n";
  return out.str();
}

std::string render_text(const Report& report) {
  const Json header = report_header(report.config);
  std::ostringstream out;
  out << "coblab " << header["tool_version"].get<std::string>() << " schema " << kReportSchemaVersion << "\n";
  out << "precision " << header["precision"].dump() << "\n";
  out << "config " << header["config"].dump() << "\n\n";
  for (const auto& line : report.summary) out << line << "\n";
  if (!report.summary.empty()) out << "\n";
  for (const auto& c : report.certificates) out << render_certificate_text(c) << "\n";
  return out.str();
}

void write_report(const Report& report, std::ostream& out) {
  const ReportFormat format = report.config.format;
  if (report.config.out.empty()) {
    switch (format) {
      case ReportFormat::json:
        out << render_json(report);
        break;
      case ReportFormat::text:
        out << render_text(report);
        break;
      case ReportFormat::csv:
        for (std::size_t i = 0; i < report.tables.size(); ++i) out << (i ? "\n" : "") << render_csv(report, report.tables[i]);
        break;
    }
    return;
  }

  const std::filesystem::path dir(report.config.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw ConfigError("cannot create output directory " + dir.string());
  switch (format) {
    case ReportFormat::json:
      write_file(dir / "report.json", render_json(report));
      break;
    case ReportFormat::text:
      write_file(dir / "report.txt", render_text(report));
      break;
    case ReportFormat::csv:
      for (const auto& t : report.tables) write_file(dir / (t.name + ".csv"), render_csv(report, t));
      break;
  }
  if (format != ReportFormat::text && !report.certificates.empty()) {
    write_file(dir / "certificates.txt", render_text(report));
  }
}

}  // namespace coblab

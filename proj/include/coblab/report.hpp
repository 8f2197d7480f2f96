#pragma once

// Reproducible experiment configs and report serialization: JSON for
// structured results, CSV for series, plain text for certificates. Every
// report carries a versioned header with the config and precision policy.

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coblab/constructions.hpp"
#include "coblab/diophantine.hpp"
#include "coblab/fourier.hpp"
#include "coblab/interval.hpp"
#include "coblab/spectral.hpp"

namespace coblab {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { csv, json, text };

std::string to_string(ReportFormat f);
/// Throws ConfigError on anything but "csv", "json", "text".
ReportFormat parse_format(const std::string& s);

struct ExperimentConfig {
  std::string command = "construct";
  /// Subtask within the command; empty selects the command's default.
  std::string task;
  std::string alpha = "sqrt(2)-1";
  std::string beta = "sqrt(3)-1";
  std::int64_t Q = 1000000;
  std::int64_t K = 10;
  std::int64_t N = 64;
  std::int64_t depth = 20;
  double delta = 0.6;
  double gamma = 2.0;
  double p = 2.0;
  /// Exponent for l_r membership in the shift example; 0 selects 2p + 1.
  double r = 0.0;
  double ratio = kDefaultLacunaryRatio;
  double budget = kDefaultSeriesBudget;
  double tol = 1e-20;
  std::string out;
  ReportFormat format = ReportFormat::json;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool doubling_tripling = false;

  /// Throws ConfigError on non-positive bounds, tolerances outside (0, 1),
  /// ratio <= 1 or an unknown command.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

void to_json(Json& j, const ExperimentConfig& c);
/// Missing keys keep their defaults; unknown keys are a ConfigError.
void from_json(const Json& j, ExperimentConfig& c);

/// Endpoints rounded outward to `digits` significant decimal digits.
std::string lower_string(const Interval& x, int digits = 20);
std::string upper_string(const Interval& x, int digits = 20);
/// Shortest round-trip decimal form.
std::string format_double(double x);

void to_json(Json& j, const Interval& x);
void to_json(Json& j, const CertificateEntry& e);
void to_json(Json& j, const Certificate& c);
void to_json(Json& j, const ApproximationRecord& r);
void to_json(Json& j, const SparseFourierSeries& f);
void to_json(Json& j, const SmallDivisorReport& r);
void to_json(Json& j, const CriterionSum& s);
void to_json(Json& j, const ConstructionResult& r);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  ExperimentConfig config;
  Json result = Json::object();
  std::vector<Table> tables;
  std::vector<Certificate> certificates;
  std::vector<std::string> summary;
  /// Nonzero when the run itself detected a failure (selftest).
  int exit_status = 0;
};

/// Schema version, tool version, precision policy and config.
Json report_header(const ExperimentConfig& config);

std::string render_json(const Report& report);
/// One table with '#'-prefixed header lines.
std::string render_csv(const Report& report, const Table& table);
std::string render_text(const Report& report);
std::string render_certificate_text(const Certificate& c);

/// Writes to `out` in the configured format, or into the directory
/// config.out (report.json, <table>.csv or report.txt) when it is set.
/// Throws ConfigError when the directory cannot be written.
void write_report(const Report& report, std::ostream& out);

}  // namespace coblab

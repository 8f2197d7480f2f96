#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "coblab/cli.hpp"
#include "coblab/errors.hpp"

int main(int argc, char** argv) {
  using coblab::ExperimentConfig;
  ExperimentConfig flags;
  std::string format = "json";
  std::string config_path;

  CLI::App app{"Joint and double coboundaries of commuting rotations: certified experiments"};
  app.set_version_flag("--version", COBLAB_VERSION);
  app.fallthrough();
  app.require_subcommand(1);

  struct Flag {
    CLI::Option* option;
    std::function<void(ExperimentConfig&)> apply;
  };
  std::vector<Flag> set_flags;
  auto add = [&](const std::string& name, auto ExperimentConfig::*member, const std::string& help) {
    CLI::Option* o = app.add_option(name, flags.*member, help);
    set_flags.push_back({o, [member, &flags](ExperimentConfig& c) { c.*member = flags.*member; }});
  };
  add("--task", &ExperimentConfig::task, "subtask of the command");
  add("--alpha", &ExperimentConfig::alpha, "first quadratic irrational, e.g. 'sqrt(2)-1'");
  add("--beta", &ExperimentConfig::beta, "second quadratic irrational");
  add("--Q", &ExperimentConfig::Q, "search bound for q");
  add("--K", &ExperimentConfig::K, "number of terms, row length or polynomial radius");
  add("--N", &ExperimentConfig::N, "series length, square-search bound or grid size");
  add("--depth", &ExperimentConfig::depth, "continued-fraction depth");
  add("--delta", &ExperimentConfig::delta, "exponent for the square-approximation search");
  add("--gamma", &ExperimentConfig::gamma, "logarithmic exponent for decay checks");
  add("--p", &ExperimentConfig::p, "exponent p >= 1 for the shift example");
  add("--r", &ExperimentConfig::r, "l_r exponent for the shift example (0: 2p + 1)");
  add("--ratio", &ExperimentConfig::ratio, "lacunary ratio");
  add("--budget", &ExperimentConfig::budget, "budget for sum q^(-1/2)");
  add("--tol", &ExperimentConfig::tol, "enclosure width target");
  add("--out", &ExperimentConfig::out, "output directory (default: stdout)");
  add("--seed", &ExperimentConfig::seed, "seed for random trigonometric polynomials");
  add("--threads", &ExperimentConfig::threads, "worker threads");
  CLI::Option* format_opt =
      app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "json", "text"}));
  CLI::Option* dt_opt = app.add_flag("--doubling-tripling", flags.doubling_tripling, "rates: doubling-tripling variance");
  app.add_option("--config", config_path, "JSON config file; explicit flags override it");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"approx", "simultaneous approximation: dirichlet, bad-pair, squares, cf, dependence"},
      {"construct", "joint non-double coboundaries: joint, bad-pair, dependent"},
      {"check", "sufficient conditions: bad-joint, mur, double-bad, witness, petersen, kac-salem"},
      {"spectral", "spectral criteria: construction, random"},
      {"rates", "ergodic-sum rates: cesaro, doubling-tripling"},
      {"shift", "the shift example on l_p(N^2)"},
      {"selftest", "built-in property checks"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return coblab::kExitConfigError;
  }

  ExperimentConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot read config " << config_path << "\n";
      return coblab::kExitConfigError;
    }
    try {
      coblab::Json j = coblab::Json::parse(in);
      j.get_to(config);
    } catch (const std::exception& e) {
      std::cerr << "malformed config: " << e.what() << "\n";
      return coblab::kExitConfigError;
    }
  }
  for (const auto& f : set_flags) {
    if (f.option->count() > 0) f.apply(config);
  }
  if (format_opt->count() > 0) config.format = coblab::parse_format(format);
  if (dt_opt->count() > 0) config.doubling_tripling = flags.doubling_tripling;
  config.command = app.get_subcommands().front()->get_name();

  return coblab::run(config, std::cout, std::cerr);
}

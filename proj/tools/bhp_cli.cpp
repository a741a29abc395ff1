// bhp: command-line front end for backward Heisenberg picture experiments.
//
//   bhp run <config>                      expectation table + diagnostics
//   bhp check <config>                    diagnostics only
//   bhp sweep <config> --lambdas a,b,...  remainder scaling against lambda
//   bhp oscillator <config>               closed form vs truncated Fock numerics
//
// Exit status: 0 when every enabled check passes, 1 when a check fails,
// 2 for usage and configuration errors.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bhp/config.hpp"
#include "bhp/runner.hpp"

namespace {

using bhp::config::OutputFormat;
using bhp::config::RunConfig;
namespace runner = bhp::runner;

constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;

struct Overrides {
  std::string output;
  std::string format;
  std::optional<int> steps;
  std::optional<int> order;
  std::uint64_t seed = 0;
};

RunConfig load(const std::string& path, const Overrides& o) {
  RunConfig cfg = bhp::config::load_config(path);
  if (!o.output.empty()) cfg.output.path = o.output;
  if (o.format == "csv") cfg.output.format = OutputFormat::csv;
  if (o.format == "json") cfg.output.format = OutputFormat::json;
  if (o.steps) cfg.grid.n_steps = *o.steps;
  if (o.order) cfg.max_order = *o.order;
  bhp::config::validate(cfg);
  return cfg;
}

// Runs `write` against the configured path, or standard output when none is set.
void emit(const RunConfig& cfg, const std::function<void(std::ostream&)>& write) {
  if (cfg.output.path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(cfg.output.path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + cfg.output.path);
  write(out);
  if (!out) throw std::runtime_error("failed writing " + cfg.output.path);
}

void write_sidecar(const std::string& path, const std::vector<runner::CheckResult>& checks) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open diagnostics file " + path);
  runner::write_checks_csv(out, checks);
}

int report_checks(const std::vector<runner::CheckResult>& checks) {
  int status = 0;
  for (const auto& c : checks) {
    if (c.passed) continue;
    std::cerr << "check failed: " << c.name << " = " << runner::format_number(c.value)
              << " exceeds tolerance " << runner::format_number(c.tolerance) << '\n';
    status = kExitFailedCheck;
  }
  return status;
}

int cmd_run(const std::string& path, const Overrides& o, bool tables) {
  const RunConfig cfg = load(path, o);
  const auto report = runner::run(cfg, {tables, o.seed});
  const bool json = cfg.output.format == OutputFormat::json;
  emit(cfg, [&](std::ostream& out) {
    if (json) {
      runner::write_rows_json(out, report);
    } else if (tables) {
      runner::write_rows_csv(out, report.rows);
    } else {
      runner::write_checks_csv(out, report.checks);
    }
  });
  if (tables && !json) {
    if (cfg.output.path.empty()) {
      runner::write_checks_csv(std::cerr, report.checks);
    } else {
      write_sidecar(cfg.output.path + ".diagnostics.csv", report.checks);
    }
  }
  return report_checks(report.checks);
}

int cmd_sweep(const std::string& path, const Overrides& o, const std::vector<double>& lambdas) {
  const RunConfig cfg = load(path, o);
  const auto report = runner::sweep(cfg, lambdas);
  emit(cfg, [&](std::ostream& out) {
    if (cfg.output.format == OutputFormat::json) {
      runner::write_sweep_json(out, report);
    } else {
      runner::write_sweep_csv(out, report);
    }
  });
  return 0;
}

int cmd_oscillator(const std::string& path, const Overrides& o) {
  const RunConfig cfg = load(path, o);
  const auto report = runner::run_oscillator(cfg);
  emit(cfg, [&](std::ostream& out) {
    if (cfg.output.format == OutputFormat::json) {
      runner::write_oscillator_json(out, report);
    } else {
      runner::write_oscillator_csv(out, report);
    }
  });
  if (cfg.output.format == OutputFormat::csv) {
    if (cfg.output.path.empty()) {
      runner::write_checks_csv(std::cerr, report.checks);
    } else {
      write_sidecar(cfg.output.path + ".diagnostics.csv", report.checks);
    }
  }
  return report_checks(report.checks);
}

void add_common(CLI::App* sub, std::string& config, Overrides& o) {
  sub->add_option("config", config, "configuration file (JSON)")->required()->check(CLI::ExistingFile);
  sub->add_option("--output", o.output, "output path (default: config value, else stdout)");
  sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--steps", o.steps, "override grid.n_steps");
  sub->add_option("--order", o.order, "override max_order");
  sub->add_option("--seed", o.seed, "seed for randomized identity probes");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backward Heisenberg picture perturbation experiments"};
  app.require_subcommand(1);

  std::string config;
  Overrides overrides;
  std::vector<double> lambdas;

  auto* run = app.add_subcommand("run", "expectation table by order plus diagnostics");
  add_common(run, config, overrides);
  auto* check = app.add_subcommand("check", "diagnostics only, no tables");
  add_common(check, config, overrides);
  auto* sweep = app.add_subcommand("sweep", "partial-sum residual scaling against lambda");
  add_common(sweep, config, overrides);
  sweep->add_option("--lambdas", lambdas, "comma separated drive strengths")
      ->required()
      ->delimiter(',');
  auto* osc = app.add_subcommand("oscillator", "closed-form oscillator solution vs numerics");
  add_common(osc, config, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return cmd_run(config, overrides, true);
    if (*check) return cmd_run(config, overrides, false);
    if (*sweep) return cmd_sweep(config, overrides, lambdas);
    return cmd_oscillator(config, overrides);
  } catch (const bhp::config::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailedCheck;
  }
}

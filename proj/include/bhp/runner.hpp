#pragma once

// Orchestrates a configured experiment: exact evolution, perturbation series,
// oracle cross-checks, and the tabular output written by the command-line tool.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bhp/config.hpp"

namespace bhp::runner {

/// One output line: order is "0".."N", "exact" or "sum≤N" (UTF-8).
struct ResultRow {
  double t_prime = 0.0;
  std::string order;
  double value_re = 0.0;
  double value_im = 0.0;
  std::optional<double> residual;  // only on "sum≤N" rows
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct RunReport {
  std::vector<ResultRow> rows;
  std::vector<CheckResult> checks;
  bool ok() const;
  /// First failing check, if any.
  std::optional<CheckResult> first_failure() const;
};

/// Tolerances every enabled check is held to.
namespace tolerance {
inline constexpr double kConservation = 1e-8;
inline constexpr double kDuality = 1e-10;
inline constexpr double kDyson = 1e-8;
inline constexpr double kRoutes = 1e-6;
inline constexpr double kHermitianSeries = 1e-8;
inline constexpr double kDensityCorrection = 1e-10;
inline constexpr double kLambdaScaling = 1e-12;
inline constexpr double kTraceIdentity = 1e-12;
inline constexpr double kOscillator = 1e-6;
inline constexpr double kSymplectic = 1e-12;
}  // namespace tolerance

struct RunOptions {
  bool tables = true;
  std::uint64_t seed = 0;
};

/// Expectation table by order at every t' node plus the enabled diagnostics.
RunReport run(const config::RunConfig& config, const RunOptions& options = {});

struct SweepPoint {
  int partial_order = 0;
  double lambda = 0.0;
  double residual = 0.0;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  /// slopes[n'] = fitted d log(residual) / d log(lambda)
  std::vector<double> slopes;
};

/// Rescales the drive so its largest |strength| equals each lambda, and fits the
/// log-log slope of max_t' |partial sum - exact| per partial order.
/// Throws std::invalid_argument unless at least two strictly positive lambdas are given.
SweepReport sweep(const config::RunConfig& config, const std::vector<double>& lambdas);

struct OscillatorSample {
  double t = 0.0;
  double t_prime = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double error = 0.0;
};

struct OscillatorReport {
  std::vector<OscillatorSample> samples;
  std::vector<CheckResult> checks;
  bool ok() const;
};

/// Analytic-vs-numeric comparison on an S x S (t, t') sample with t' <= t.
OscillatorReport run_oscillator(const config::RunConfig& config);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// 17 significant digits, round-trip safe.
std::string format_number(double x);

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_rows_json(std::ostream& out, const RunReport& report);
void write_checks_csv(std::ostream& out, const std::vector<CheckResult>& checks);
void write_sweep_csv(std::ostream& out, const SweepReport& report);
void write_sweep_json(std::ostream& out, const SweepReport& report);
void write_oscillator_csv(std::ostream& out, const OscillatorReport& report);
void write_oscillator_json(std::ostream& out, const OscillatorReport& report);

}  // namespace bhp::runner

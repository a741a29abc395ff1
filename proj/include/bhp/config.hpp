#pragma once

// Run configuration: schema, defaults, validation and (de)serialization.
//
// The on-disk format is JSON. Complex matrices are written as lists of rows,
// each row a list of [re, im] pairs:
//
//   {
//     "units": {"hbar": 1.0},
//     "model": {"preset": "two_level", "omega": 1.0},
//     "drive": [{"strength": 0.1, "envelope": {"kind": "step"}, "operator": "sigma_x"}],
//     "observable": "sigma_z",
//     "initial_state": {"kind": "basis", "index": 0},
//     "grid": {"t_final": 2.0, "n_steps": 2000},
//     "max_order": 2,
//     "checks": {"conservation": true, "duality": true, "dyson": true,
//                "lambda_scaling": true, "routes": true},
//     "output": {"format": "csv", "path": "out.csv"}
//   }

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bhp/driven_hamiltonian.hpp"
#include "bhp/operator.hpp"
#include "bhp/oscillator.hpp"

namespace bhp::config {

/// Parse or validation failure; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using MatrixRows = std::vector<std::vector<Complex>>;

/// Either a preset-defined operator name or an explicit matrix.
struct OperatorSpec {
  std::string name;
  MatrixRows matrix;
  bool operator==(const OperatorSpec&) const = default;
};

enum class ModelKind { two_level, oscillator, explicit_matrices };

struct ModelSpec {
  ModelKind kind = ModelKind::two_level;
  double omega = 1.0;        // two_level: h0 = (omega/2) sigma_z
  oscillator::Params osc{};  // oscillator preset
  MatrixRows h0;             // explicit_matrices
  bool operator==(const ModelSpec&) const = default;
};

struct DriveSpec {
  double strength = 0.0;
  Envelope envelope;
  OperatorSpec op;
  bool operator==(const DriveSpec&) const = default;
};

enum class StateKind { basis, pure, density, thermal, coherent };

struct InitialStateSpec {
  StateKind kind = StateKind::basis;
  int index = 0;
  std::vector<Complex> amplitudes;
  MatrixRows density;
  double beta = 1.0;
  Complex alpha{1.0, 0.0};
  bool operator==(const InitialStateSpec&) const = default;
};

struct GridSpec {
  double t_final = 2.0;
  int n_steps = 2000;
  bool operator==(const GridSpec&) const = default;
};

struct ChecksSpec {
  bool conservation = true;
  bool duality = true;
  bool dyson = true;
  bool lambda_scaling = true;
  bool routes = true;
  bool operator==(const ChecksSpec&) const = default;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
  OutputFormat format = OutputFormat::csv;
  std::string path;  // empty: standard output
  bool operator==(const OutputSpec&) const = default;
};

/// Parameters of the `oscillator` subcommand's analytic-vs-numeric sweep.
struct OscillatorRunSpec {
  Complex alpha{1.0, 0.0};
  int samples = 9;
  double t_max = 6.283185307179586;
  bool operator==(const OscillatorRunSpec&) const = default;
};

struct RunConfig {
  Units units{};
  ModelSpec model;
  std::vector<DriveSpec> drive;
  OperatorSpec observable;
  InitialStateSpec initial_state;
  GridSpec grid;
  int max_order = 2;
  ChecksSpec checks;
  OutputSpec output;
  OscillatorRunSpec oscillator;
  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates; every default is materialized in the result.
RunConfig load_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// JSON text that load_config_text maps back to an equal RunConfig.
std::string serialize(const RunConfig& config);

/// Re-runs the invariant checks (used after command-line overrides).
void validate(const RunConfig& config);

/// Objects a validated configuration describes.
struct Model {
  DrivenHamiltonian hamiltonian;
  Operator observable;
  DensityMatrix rho0;
  TimeGrid grid;
  int max_order;
};

Model build_model(const RunConfig& config);

}  // namespace bhp::config

#include <doctest.h>

#include <random>
#include <string>

#include "bhp/config.hpp"

using namespace bhp;
using namespace bhp::config;

namespace {

std::string error_of(const std::string& text) {
  try {
    load_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& needle) {
  return s.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("minimal two-level config materializes defaults") {
  const auto c = load_config_text(R"({"model": {"preset": "two_level"}})");
  CHECK(c.units.hbar() == 1.0);
  CHECK(c.max_order == 2);
  CHECK(c.model.kind == ModelKind::two_level);
  CHECK(c.model.omega == 1.0);
  REQUIRE(c.drive.size() == 1);
  CHECK(c.drive[0].strength == 0.1);
  CHECK(c.drive[0].op.name == "sigma_x");
  CHECK(c.observable.name == "sigma_z");
  CHECK(c.grid.t_final == 2.0);
  CHECK(c.grid.n_steps == 2000);
  CHECK(c.checks == ChecksSpec{});
  CHECK(c.output.format == OutputFormat::csv);
  CHECK(c.output.path.empty());
}

TEST_CASE("oscillator preset defaults") {
  const auto c = load_config_text(R"({"model": {"preset": "oscillator"}})");
  CHECK(c.model.osc.fock_dim == 64);
  CHECK(c.grid.n_steps == 400);
  CHECK(c.initial_state.kind == StateKind::coherent);
  CHECK(c.observable.name == "x");
  CHECK_FALSE(c.checks.dyson);
  CHECK_FALSE(c.checks.routes);
  CHECK(c.oscillator.samples == 9);
  const auto on = load_config_text(
      R"({"model": {"preset": "oscillator"}, "checks": {"routes": true}})");
  CHECK(on.checks.routes);
  CHECK_FALSE(on.checks.dyson);
}

TEST_CASE("bound checks name the violated invariant") {
  const std::string e = error_of(R"({"model": {"preset": "two_level"}, "grid": {"n_steps": 5}})");
  CHECK(contains(e, "grid.n_steps"));
  CHECK(contains(e, "n_steps ≥ 10"));
  CHECK(contains(error_of(R"({"model": {"preset": "two_level"}, "max_order": 9})"), "max_order"));
  CHECK(contains(error_of(R"({"model": {"preset": "two_level"}, "max_order": -1})"), "max_order"));
  CHECK(contains(error_of(R"({"model": {"preset": "two_level"},
                              "initial_state": {"kind": "thermal", "beta": 0}})"),
                 "beta > 0"));
  CHECK(contains(error_of(R"({"model": {"preset": "two_level"}, "units": {"hbar": -1}})"),
                 "units.hbar"));
  CHECK(contains(error_of(R"({"model": {"preset": "two_level"}, "grid": {"t_final": 0}})"),
                 "t_final"));
}

TEST_CASE("non-Hermitian explicit h0 is rejected") {
  const std::string e = error_of(R"({"model": {"h0": [[[1, 0], [0, 1]], [[0, 0], [2, 0]]]},
                                     "observable": "identity"})");
  CHECK(contains(e, "model.h0"));
  CHECK(contains(e, "Hermitian"));
}

TEST_CASE("malformed input reports a location") {
  const std::string e = error_of("{\"model\": {\"preset\": \"two_level\"},\n \"grid\": {\"n_steps\": }}");
  CHECK(contains(e, "parse error"));
  CHECK(contains(e, "line 2"));
  CHECK(contains(error_of(R"({"model": {"preset": "two_level"}, "gird": {}})"), "gird"));
  CHECK(contains(error_of(R"({"model": {"preset": "qutrit"}})"), "model.preset"));
  CHECK(contains(error_of(R"({"model": {"preset": "two_level"}, "drive": [{"operator": "x"}]})"),
                 "drive[0].operator"));
  CHECK(contains(error_of(R"({"model": {"h0": [[[1, 0]], [[0, 0]]]}, "observable": "h0"})"),
                 "model.h0"));
  CHECK(contains(error_of(R"({"model": {"h0": [[[1, 0], [0, 0]], [[0, 0], [2, 0]]]}})"),
                 "observable"));
  CHECK(contains(error_of(R"({"model": {"preset": "two_level"},
                              "drive": [{"operator": "sigma_x", "envelope": {"kind": "square"}}]})"),
                 "envelope.kind"));
  CHECK(contains(error_of(R"({"model": {"preset": "two_level"}, "output": {"format": "xml"}})"),
                 "output.format"));
  CHECK(contains(error_of(R"({"model": {"preset": "two_level"},
                              "observable": [[[1, 0], [0, 0], [0, 0]], [[0, 0], [1, 0], [0, 0]],
                                             [[0, 0], [0, 0], [1, 0]]]})"),
                 "observable"));
}

TEST_CASE("build_model assembles the configured objects") {
  const auto c = load_config_text(R"({
    "model": {"preset": "two_level", "omega": 2.0},
    "drive": [{"strength": 0.3, "envelope": {"kind": "sinusoid", "frequency": 2.0},
               "operator": "sigma_y"}],
    "observable": "sigma_x",
    "initial_state": {"kind": "pure", "amplitudes": [[1, 0], [0, 1]]},
    "grid": {"t_final": 1.5, "n_steps": 30},
    "max_order": 4})");
  const auto m = build_model(c);
  CHECK(max_abs_diff(m.hamiltonian.h0(), pauli::z() * 1.0) == 0.0);
  CHECK(max_abs_diff(eval_h1(m.hamiltonian, 0.0), pauli::y() * 0.3) <= 1e-15);
  CHECK(max_abs_diff(m.observable, pauli::x()) == 0.0);
  CHECK(std::abs(m.rho0.matrix()(0, 1) - Complex(0.0, -0.5)) <= 1e-15);
  CHECK(m.grid == TimeGrid(1.5, 30));
  CHECK(m.max_order == 4);

  const auto t = build_model(load_config_text(
      R"({"model": {"preset": "two_level"}, "initial_state": {"kind": "thermal", "beta": 1.0}})"));
  CHECK(t.rho0.matrix()(1, 1).real() > t.rho0.matrix()(0, 0).real());
}

TEST_CASE("serialize round trip on generated configs") {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 40; ++trial) {
    RunConfig c = load_config_text(R"({"model": {"preset": "two_level"}})");
    c.units = Units(0.5 + std::abs(u(rng)));
    c.model.omega = 0.1 + std::abs(u(rng));
    c.drive.clear();
    const int terms = 1 + trial % 3;
    for (int k = 0; k < terms; ++k) {
      DriveSpec d;
      d.strength = u(rng);
      switch ((trial + k) % 5) {
        case 0: d.envelope = envelope::Step{u(rng)}; break;
        case 1: d.envelope = envelope::Sinusoid{u(rng), u(rng), u(rng)}; break;
        case 2: d.envelope = envelope::GaussianPulse{u(rng), u(rng), 0.1 + std::abs(u(rng))}; break;
        case 3: d.envelope = envelope::Polynomial{{u(rng), u(rng), u(rng)}}; break;
        default: d.envelope = envelope::PiecewiseLinear{{{0.0, u(rng)}, {1.0, u(rng)}}}; break;
      }
      if (coin(rng)) {
        d.op.name = "sigma_y";
      } else {
        const double a = u(rng), b = u(rng), r = u(rng);
        d.op.matrix = {{{a, 0.0}, {r, b}}, {{r, -b}, {-a, 0.0}}};
      }
      c.drive.push_back(d);
    }
    if (coin(rng)) {
      c.initial_state.kind = StateKind::thermal;
      c.initial_state.beta = 0.1 + std::abs(u(rng));
    } else {
      c.initial_state.kind = StateKind::pure;
      c.initial_state.amplitudes = {{0.6, 0.0}, {0.0, 0.8}};
    }
    c.grid = {0.5 + std::abs(u(rng)), 10 + trial};
    c.max_order = trial % 9;
    c.checks.duality = coin(rng);
    c.checks.routes = coin(rng);
    c.output.format = coin(rng) ? OutputFormat::json : OutputFormat::csv;
    c.output.path = coin(rng) ? "out.csv" : "";
    validate(c);
    const auto back = load_config_text(serialize(c));
    CHECK(back == c);
    CHECK(serialize(back) == serialize(c));
  }

  for (const char* text : {R"({"model": {"preset": "oscillator", "omega": 1.5, "fock_dim": 40},
                                "oscillator": {"alpha": [0.5, 0.25], "samples": 5}})",
                           R"({"model": {"h0": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]},
                                "observable": [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]],
                                "initial_state": {"kind": "density",
                                                  "matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]}})"}) {
    const auto c = load_config_text(text);
    CHECK(load_config_text(serialize(c)) == c);
  }
}

TEST_CASE("load_config reads files and reports missing ones") {
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
  const auto c = load_config(BHP_CONFIG_DIR "/two_level.json");
  CHECK(c.model.kind == ModelKind::two_level);
}

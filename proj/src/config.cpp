#include "bhp/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bhp::config {

using json = nlohmann::json;

namespace {

constexpr int kMinSteps = 10;
constexpr int kMaxOrder = 8;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

std::string index_path(const std::string& parent, std::size_t i) {
  return parent + "[" + std::to_string(i) + "]";
}

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) fail(join(path, item.key()), "unknown field");
  }
}

double get_number(const json& j, const std::string& path, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number()) fail(join(path, key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(join(path, key), "expected a finite number");
  return x;
}

int get_int(const json& j, const std::string& path, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(join(path, key), "expected an integer");
  return v.get<int>();
}

bool get_bool(const json& j, const std::string& path, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_boolean()) fail(join(path, key), "expected true or false");
  return v.get<bool>();
}

std::string get_string(const json& j, const std::string& path, const char* key,
                       const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) fail(join(path, key), "expected a string");
  return v.get<std::string>();
}

Complex parse_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail(path, "expected a complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> parse_vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of [re, im] pairs");
  std::vector<Complex> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_complex(j[i], index_path(path, i)));
  return out;
}

MatrixRows parse_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty list of matrix rows");
  MatrixRows rows;
  for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(parse_vector(j[i], index_path(path, i)));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      fail(index_path(path, i), "matrix must be square (" + std::to_string(rows.size()) +
                                    " rows, this row has " + std::to_string(rows[i].size()) +
                                    " entries)");
    }
  }
  return rows;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

json matrix_to_json(const MatrixRows& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(vector_to_json(row));
  return out;
}

Matrix to_matrix(const MatrixRows& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

OperatorSpec parse_operator(const json& j, const std::string& path) {
  if (j.is_string()) return {j.get<std::string>(), {}};
  return {"", parse_matrix(j, path)};
}

json operator_to_json(const OperatorSpec& op) {
  if (!op.name.empty()) return op.name;
  return matrix_to_json(op.matrix);
}

Envelope parse_envelope(const json& j, const std::string& path) {
  require_object(j, path);
  const std::string kind = get_string(j, path, "kind", "step");
  try {
    if (kind == "step") {
      allow_keys(j, path, {"kind", "amplitude"});
      return Envelope{envelope::Step{get_number(j, path, "amplitude", 1.0)}};
    }
    if (kind == "sinusoid") {
      allow_keys(j, path, {"kind", "amplitude", "frequency", "phase"});
      return Envelope{envelope::Sinusoid{get_number(j, path, "amplitude", 1.0),
                                         get_number(j, path, "frequency", 1.0),
                                         get_number(j, path, "phase", 0.0)}};
    }
    if (kind == "gaussian_pulse") {
      allow_keys(j, path, {"kind", "amplitude", "center", "width"});
      return Envelope{envelope::GaussianPulse{get_number(j, path, "amplitude", 1.0),
                                              get_number(j, path, "center", 0.0),
                                              get_number(j, path, "width", 1.0)}};
    }
    if (kind == "polynomial") {
      allow_keys(j, path, {"kind", "coefficients"});
      envelope::Polynomial p;
      const json& c = j.contains("coefficients") ? j.at("coefficients") : json::array();
      if (!c.is_array()) fail(join(path, "coefficients"), "expected a list of numbers");
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i].is_number()) fail(index_path(join(path, "coefficients"), i), "expected a number");
        p.coefficients.push_back(c[i].get<double>());
      }
      return Envelope{std::move(p)};
    }
    if (kind == "piecewise_linear") {
      allow_keys(j, path, {"kind", "knots"});
      envelope::PiecewiseLinear p;
      const json& k = j.contains("knots") ? j.at("knots") : json::array();
      if (!k.is_array() || k.empty()) fail(join(path, "knots"), "expected a list of [t, value]");
      for (std::size_t i = 0; i < k.size(); ++i) {
        const auto& knot = k[i];
        if (!knot.is_array() || knot.size() != 2 || !knot[0].is_number() || !knot[1].is_number()) {
          fail(index_path(join(path, "knots"), i), "expected [t, value]");
        }
        p.knots.emplace_back(knot[0].get<double>(), knot[1].get<double>());
      }
      return Envelope{std::move(p)};
    }
  } catch (const NumericError& e) {
    fail(path, e.what());
  }
  fail(join(path, "kind"), "unknown envelope kind '" + kind + "'");
}

json envelope_to_json(const Envelope& env) {
  struct Visitor {
    json operator()(const envelope::Step& s) const {
      return {{"kind", "step"}, {"amplitude", s.amplitude}};
    }
    json operator()(const envelope::Sinusoid& s) const {
      return {{"kind", "sinusoid"},
              {"amplitude", s.amplitude},
              {"frequency", s.frequency},
              {"phase", s.phase}};
    }
    json operator()(const envelope::GaussianPulse& g) const {
      return {{"kind", "gaussian_pulse"},
              {"amplitude", g.amplitude},
              {"center", g.center},
              {"width", g.width}};
    }
    json operator()(const envelope::Polynomial& p) const {
      return {{"kind", "polynomial"}, {"coefficients", p.coefficients}};
    }
    json operator()(const envelope::PiecewiseLinear& p) const {
      json knots = json::array();
      for (const auto& [t, v] : p.knots) knots.push_back(json::array({t, v}));
      return {{"kind", "piecewise_linear"}, {"knots", knots}};
    }
  };
  return std::visit(Visitor{}, env.shape());
}

const std::map<std::string, ModelKind>& model_names() {
  static const std::map<std::string, ModelKind> names{
      {"two_level", ModelKind::two_level}, {"oscillator", ModelKind::oscillator}};
  return names;
}

const char* state_kind_name(StateKind k) {
  switch (k) {
    case StateKind::basis: return "basis";
    case StateKind::pure: return "pure";
    case StateKind::density: return "density";
    case StateKind::thermal: return "thermal";
    case StateKind::coherent: return "coherent";
  }
  return "basis";
}

ModelSpec parse_model(const json& j, const Units& units) {
  const std::string path = "model";
  require_object(j, path);
  ModelSpec m;
  if (j.contains("h0")) {
    allow_keys(j, path, {"h0"});
    m.kind = ModelKind::explicit_matrices;
    m.h0 = parse_matrix(j.at("h0"), join(path, "h0"));
    return m;
  }
  const std::string preset = get_string(j, path, "preset", "");
  const auto it = model_names().find(preset);
  if (it == model_names().end()) {
    fail(join(path, "preset"), "expected \"two_level\", \"oscillator\" or an explicit h0 matrix");
  }
  m.kind = it->second;
  if (m.kind == ModelKind::two_level) {
    allow_keys(j, path, {"preset", "omega"});
    m.omega = get_number(j, path, "omega", 1.0);
    if (!(m.omega > 0.0)) fail(join(path, "omega"), "omega > 0 required");
  } else {
    allow_keys(j, path, {"preset", "mass", "omega", "fock_dim"});
    m.osc.mass = get_number(j, path, "mass", 1.0);
    m.osc.omega = get_number(j, path, "omega", 1.0);
    m.osc.fock_dim = get_int(j, path, "fock_dim", 64);
    m.osc.units = units;
    try {
      m.osc.validate();
    } catch (const NumericError& e) {
      fail(path, e.what());
    }
  }
  return m;
}

std::vector<DriveSpec> default_drive(const ModelSpec& model) {
  switch (model.kind) {
    case ModelKind::two_level: return {{0.1, Envelope{envelope::Step{}}, {"sigma_x", {}}}};
    case ModelKind::oscillator: return {{0.1, Envelope{envelope::Step{}}, {"x", {}}}};
    case ModelKind::explicit_matrices: return {};
  }
  return {};
}

InitialStateSpec parse_state(const json& j, const ModelSpec& model) {
  const std::string path = "initial_state";
  require_object(j, path);
  InitialStateSpec s;
  const std::string default_kind = model.kind == ModelKind::oscillator ? "coherent" : "basis";
  const std::string kind = get_string(j, path, "kind", default_kind);
  if (kind == "basis") {
    allow_keys(j, path, {"kind", "index"});
    s.kind = StateKind::basis;
    s.index = get_int(j, path, "index", 0);
  } else if (kind == "pure") {
    allow_keys(j, path, {"kind", "amplitudes"});
    s.kind = StateKind::pure;
    if (!j.contains("amplitudes")) fail(join(path, "amplitudes"), "required for a pure state");
    s.amplitudes = parse_vector(j.at("amplitudes"), join(path, "amplitudes"));
  } else if (kind == "density") {
    allow_keys(j, path, {"kind", "matrix"});
    s.kind = StateKind::density;
    if (!j.contains("matrix")) fail(join(path, "matrix"), "required for a density matrix");
    s.density = parse_matrix(j.at("matrix"), join(path, "matrix"));
  } else if (kind == "thermal") {
    allow_keys(j, path, {"kind", "beta"});
    s.kind = StateKind::thermal;
    s.beta = get_number(j, path, "beta", 1.0);
  } else if (kind == "coherent") {
    allow_keys(j, path, {"kind", "alpha"});
    s.kind = StateKind::coherent;
    if (j.contains("alpha")) s.alpha = parse_complex(j.at("alpha"), join(path, "alpha"));
  } else {
    fail(join(path, "kind"), "unknown initial state kind '" + kind + "'");
  }
  return s;
}

json state_to_json(const InitialStateSpec& s) {
  json j{{"kind", state_kind_name(s.kind)}};
  switch (s.kind) {
    case StateKind::basis: j["index"] = s.index; break;
    case StateKind::pure: j["amplitudes"] = vector_to_json(s.amplitudes); break;
    case StateKind::density: j["matrix"] = matrix_to_json(s.density); break;
    case StateKind::thermal: j["beta"] = s.beta; break;
    case StateKind::coherent: j["alpha"] = complex_to_json(s.alpha); break;
  }
  return j;
}

RunConfig from_json(const json& root) {
  require_object(root, "");
  allow_keys(root, "", {"units", "model", "drive", "observable", "initial_state", "grid",
                        "max_order", "checks", "output", "oscillator"});
  RunConfig c;

  if (root.contains("units")) {
    const json& u = root.at("units");
    require_object(u, "units");
    allow_keys(u, "units", {"hbar"});
    const double hbar = get_number(u, "units", "hbar", 1.0);
    if (!(hbar > 0.0)) fail("units.hbar", "hbar > 0 required");
    c.units = Units(hbar);
  }

  if (!root.contains("model")) fail("model", "required");
  c.model = parse_model(root.at("model"), c.units);

  if (root.contains("drive")) {
    const json& d = root.at("drive");
    if (!d.is_array()) fail("drive", "expected a list of drive terms");
    for (std::size_t i = 0; i < d.size(); ++i) {
      const std::string path = index_path("drive", i);
      require_object(d[i], path);
      allow_keys(d[i], path, {"strength", "envelope", "operator"});
      DriveSpec term;
      term.strength = get_number(d[i], path, "strength", 0.0);
      if (d[i].contains("envelope")) term.envelope = parse_envelope(d[i].at("envelope"), join(path, "envelope"));
      if (!d[i].contains("operator")) fail(join(path, "operator"), "required");
      term.op = parse_operator(d[i].at("operator"), join(path, "operator"));
      c.drive.push_back(std::move(term));
    }
  } else {
    c.drive = default_drive(c.model);
  }

  if (root.contains("observable")) {
    c.observable = parse_operator(root.at("observable"), "observable");
  } else if (c.model.kind == ModelKind::two_level) {
    c.observable = {"sigma_z", {}};
  } else if (c.model.kind == ModelKind::oscillator) {
    c.observable = {"x", {}};
  } else {
    fail("observable", "required for an explicit model");
  }

  c.initial_state = root.contains("initial_state")
                        ? parse_state(root.at("initial_state"), c.model)
                        : parse_state(json::object(), c.model);

  // The 64-level spectrum needs far finer grids than the two-level preset before the
  // quadrature-dependent cross-checks reach their tolerances; those stay opt-in here.
  if (c.model.kind == ModelKind::oscillator) {
    c.grid.n_steps = 400;
    c.checks.dyson = false;
    c.checks.routes = false;
  }
  if (root.contains("grid")) {
    const json& g = root.at("grid");
    require_object(g, "grid");
    allow_keys(g, "grid", {"t_final", "n_steps"});
    c.grid.t_final = get_number(g, "grid", "t_final", c.grid.t_final);
    c.grid.n_steps = get_int(g, "grid", "n_steps", c.grid.n_steps);
  }

  c.max_order = get_int(root, "", "max_order", c.max_order);

  if (root.contains("checks")) {
    const json& k = root.at("checks");
    require_object(k, "checks");
    allow_keys(k, "checks", {"conservation", "duality", "dyson", "lambda_scaling", "routes"});
    c.checks.conservation = get_bool(k, "checks", "conservation", c.checks.conservation);
    c.checks.duality = get_bool(k, "checks", "duality", c.checks.duality);
    c.checks.dyson = get_bool(k, "checks", "dyson", c.checks.dyson);
    c.checks.lambda_scaling = get_bool(k, "checks", "lambda_scaling", c.checks.lambda_scaling);
    c.checks.routes = get_bool(k, "checks", "routes", c.checks.routes);
  }

  if (root.contains("output")) {
    const json& o = root.at("output");
    require_object(o, "output");
    allow_keys(o, "output", {"format", "path"});
    const std::string format = get_string(o, "output", "format", "csv");
    if (format == "csv") {
      c.output.format = OutputFormat::csv;
    } else if (format == "json") {
      c.output.format = OutputFormat::json;
    } else {
      fail("output.format", "expected \"csv\" or \"json\"");
    }
    c.output.path = get_string(o, "output", "path", "");
  }

  if (root.contains("oscillator")) {
    const json& o = root.at("oscillator");
    require_object(o, "oscillator");
    allow_keys(o, "oscillator", {"alpha", "samples", "t_max"});
    if (o.contains("alpha")) c.oscillator.alpha = parse_complex(o.at("alpha"), "oscillator.alpha");
    c.oscillator.samples = get_int(o, "oscillator", "samples", c.oscillator.samples);
    c.oscillator.t_max = get_number(o, "oscillator", "t_max", c.oscillator.t_max);
  }
  return c;
}

struct PresetOperators {
  std::map<std::string, Operator> named;
};

PresetOperators preset_operators(const ModelSpec& m) {
  PresetOperators p;
  switch (m.kind) {
    case ModelKind::two_level: {
      p.named.emplace("sigma_x", pauli::x());
      p.named.emplace("sigma_y", pauli::y());
      p.named.emplace("sigma_z", pauli::z());
      p.named.emplace("identity", Operator::identity(2));
      p.named.emplace("h0", Operator::hermitian(0.5 * m.omega * pauli::z().matrix()));
      break;
    }
    case ModelKind::oscillator: {
      auto ops = oscillator::fock_operators(m.osc);
      Matrix number = Matrix::Zero(m.osc.fock_dim, m.osc.fock_dim);
      for (int k = 0; k < m.osc.fock_dim; ++k) number(k, k) = static_cast<double>(k);
      p.named.emplace("x", std::move(ops.x));
      p.named.emplace("p", std::move(ops.p));
      p.named.emplace("h0", std::move(ops.h0));
      p.named.emplace("number", Operator::hermitian(std::move(number)));
      p.named.emplace("identity", Operator::identity(m.osc.fock_dim));
      break;
    }
    case ModelKind::explicit_matrices: {
      Operator h0(to_matrix(m.h0));
      if (!h0.is_hermitian()) fail("model.h0", "matrix is not Hermitian");
      p.named.emplace("identity", Operator::identity(h0.dim()));
      p.named.emplace("h0", Operator::hermitian(h0.matrix()));
      break;
    }
  }
  return p;
}

Operator resolve(const OperatorSpec& spec, const PresetOperators& preset, Eigen::Index dim,
                 const std::string& path) {
  if (!spec.name.empty()) {
    const auto it = preset.named.find(spec.name);
    if (it == preset.named.end()) {
      std::string known;
      for (const auto& [name, op] : preset.named) known += (known.empty() ? "" : ", ") + name;
      fail(path, "unknown operator '" + spec.name + "' for this model (known: " + known + ")");
    }
    return it->second;
  }
  Operator op(to_matrix(spec.matrix));
  if (op.dim() != dim) {
    fail(path, "dimension " + std::to_string(op.dim()) + " does not match the model dimension " +
                   std::to_string(dim));
  }
  if (!op.is_hermitian()) fail(path, "matrix is not Hermitian");
  return Operator::hermitian(op.matrix());
}

DensityMatrix build_state(const InitialStateSpec& s, const ModelSpec& m, const Operator& h0) {
  const std::string path = "initial_state";
  try {
    switch (s.kind) {
      case StateKind::basis:
        if (s.index < 0 || s.index >= h0.dim()) fail(join(path, "index"), "outside the Hilbert space");
        return DensityMatrix::pure(StateVector::basis(h0.dim(), s.index));
      case StateKind::pure: {
        if (static_cast<Eigen::Index>(s.amplitudes.size()) != h0.dim()) {
          fail(join(path, "amplitudes"), "length does not match the model dimension");
        }
        Vector v(h0.dim());
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = s.amplitudes[static_cast<std::size_t>(i)];
        return DensityMatrix::pure(StateVector::normalized(std::move(v)));
      }
      case StateKind::density: {
        if (static_cast<Eigen::Index>(s.density.size()) != h0.dim()) {
          fail(join(path, "matrix"), "dimension does not match the model dimension");
        }
        return DensityMatrix(to_matrix(s.density));
      }
      case StateKind::thermal:
        if (!(s.beta > 0.0)) fail(join(path, "beta"), "thermal beta > 0 required");
        return DensityMatrix::thermal(h0, s.beta);
      case StateKind::coherent:
        if (m.kind != ModelKind::oscillator) {
          fail(join(path, "kind"), "coherent states need the oscillator preset");
        }
        return DensityMatrix::pure(oscillator::coherent_state(m.osc, s.alpha));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
  fail(path, "unsupported state");
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.grid.n_steps < kMinSteps) {
    fail("grid.n_steps", "n_steps ≥ 10 required (got " + std::to_string(c.grid.n_steps) + ")");
  }
  if (!(c.grid.t_final > 0.0)) fail("grid.t_final", "t_final > 0 required");
  if (c.max_order < 0 || c.max_order > kMaxOrder) {
    fail("max_order", "0 ≤ max_order ≤ 8 required (got " + std::to_string(c.max_order) + ")");
  }
  if (c.oscillator.samples < 2) fail("oscillator.samples", "at least 2 samples required");
  if (!(c.oscillator.t_max >= 0.0)) fail("oscillator.t_max", "t_max ≥ 0 required");
  (void)build_model(c);
}

Model build_model(const RunConfig& c) {
  const auto preset = preset_operators(c.model);
  const Operator& h0 = preset.named.at("h0");

  std::vector<PerturbationTerm> terms;
  for (std::size_t i = 0; i < c.drive.size(); ++i) {
    const auto& d = c.drive[i];
    const std::string path = index_path("drive", i);
    terms.push_back({d.strength, d.envelope, resolve(d.op, preset, h0.dim(), join(path, "operator"))});
  }
  Operator f = resolve(c.observable, preset, h0.dim(), "observable");
  if (!f.is_hermitian()) fail("observable", "observable must be Hermitian");

  try {
    return Model{DrivenHamiltonian(h0, std::move(terms), c.units), std::move(f),
                 build_state(c.initial_state, c.model, h0), TimeGrid(c.grid.t_final, c.grid.n_steps),
                 c.max_order};
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
}

RunConfig load_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("parse error: ") + e.what());
  }
  RunConfig c = from_json(root);
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return load_config_text(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string serialize(const RunConfig& c) {
  json root;
  root["units"] = {{"hbar", c.units.hbar()}};
  switch (c.model.kind) {
    case ModelKind::two_level:
      root["model"] = {{"preset", "two_level"}, {"omega", c.model.omega}};
      break;
    case ModelKind::oscillator:
      root["model"] = {{"preset", "oscillator"},
                       {"mass", c.model.osc.mass},
                       {"omega", c.model.osc.omega},
                       {"fock_dim", c.model.osc.fock_dim}};
      break;
    case ModelKind::explicit_matrices:
      root["model"] = {{"h0", matrix_to_json(c.model.h0)}};
      break;
  }
  json drive = json::array();
  for (const auto& d : c.drive) {
    drive.push_back({{"strength", d.strength},
                     {"envelope", envelope_to_json(d.envelope)},
                     {"operator", operator_to_json(d.op)}});
  }
  root["drive"] = drive;
  root["observable"] = operator_to_json(c.observable);
  root["initial_state"] = state_to_json(c.initial_state);
  root["grid"] = {{"t_final", c.grid.t_final}, {"n_steps", c.grid.n_steps}};
  root["max_order"] = c.max_order;
  root["checks"] = {{"conservation", c.checks.conservation},
                    {"duality", c.checks.duality},
                    {"dyson", c.checks.dyson},
                    {"lambda_scaling", c.checks.lambda_scaling},
                    {"routes", c.checks.routes}};
  root["output"] = {{"format", c.output.format == OutputFormat::csv ? "csv" : "json"},
                    {"path", c.output.path}};
  root["oscillator"] = {{"alpha", complex_to_json(c.oscillator.alpha)},
                        {"samples", c.oscillator.samples},
                        {"t_max", c.oscillator.t_max}};
  return root.dump(2) + "\n";
}

}  // namespace bhp::config

#include "bhp/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

#include "bhp/backward_perturbation.hpp"
#include "bhp/exact_evolution.hpp"
#include "bhp/kubo_response.hpp"
#include "bhp/oscillator.hpp"

namespace bhp::runner {

namespace {

CheckResult make_check(std::string name, double value, double tol) {
  return {std::move(name), value, tol, value <= tol};
}

Operator random_matrix(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  }
  return Operator(std::move(m));
}

// Tr{[A,B]C} = Tr{[B,C]A} and Tr{[A,B]C} = Tr{A[B,C]} on random triples.
double trace_identity_defect(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 8; ++trial) {
    const Operator a = random_matrix(dim, rng);
    const Operator b = random_matrix(dim, rng);
    const Operator c = random_matrix(dim, rng);
    const double scale = frobenius(a) * frobenius(b) * frobenius(c);
    const Complex lhs = trace_inner(commutator(a, b), c);
    worst = std::max(worst, std::abs(lhs - trace_inner(commutator(b, c), a)) / scale);
    worst = std::max(worst, std::abs(lhs - trace_inner(a, commutator(b, c))) / scale);
  }
  return worst;
}

PerturbationSeries leading_orders(const PerturbationSeries& s, int max_order) {
  PerturbationSeries out{s.t_index, max_order, {}};
  out.terms.assign(s.terms.begin(), s.terms.begin() + max_order + 1);
  return out;
}

double series_hermitian_defect(const PerturbationSeries& s) {
  double worst = 0.0;
  for (const auto& order : s.terms) {
    for (const auto& op : order) worst = std::max(worst, hermitian_defect(op));
  }
  return worst;
}

double density_correction_defect(const config::Model& m, int max_order) {
  double worst = 0.0;
  for (int n = 1; n <= max_order; ++n) {
    const auto corr = density_correction(m.rho0, m.hamiltonian, m.grid, m.grid.n_steps(), n);
    for (const auto& rho : corr.values) {
      const double scale = max_abs(rho);
      if (scale == 0.0) continue;
      worst = std::max({worst, hermitian_defect(rho), std::abs(trace(rho)) / scale});
    }
  }
  return worst;
}

double lambda_scaling_defect(const config::Model& m, const PerturbationSeries& series) {
  constexpr double factor = 0.5;
  const auto scaled = quadrature_series(m.observable, scale_strength(m.hamiltonian, factor), m.grid,
                                        series.t_index, series.max_order);
  double worst = 0.0;
  for (int n = 1; n <= series.max_order; ++n) {
    const double expected_factor = std::pow(factor, n);
    double scale = 0.0;
    double diff = 0.0;
    for (int j = 0; j <= series.t_index; ++j) {
      scale = std::max(scale, max_abs(series.at(n, j)));
      diff = std::max(diff, max_abs_diff(scaled.at(n, j), series.at(n, j) * expected_factor));
    }
    if (scale > 0.0) worst = std::max(worst, diff / (expected_factor * scale));
  }
  return worst;
}

std::string sum_label(int order) { return "sum\u2264" + std::to_string(order); }

void write_json_check(std::ostream& out, const CheckResult& c) {
  out << "{\"name\": \"" << c.name << "\", \"value\": " << format_number(c.value)
      << ", \"tolerance\": " << format_number(c.tolerance)
      << ", \"passed\": " << (c.passed ? "true" : "false") << "}";
}

void write_json_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  out << "  \"diagnostics\": [";
  for (std::size_t i = 0; i < checks.size(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    write_json_check(out, checks[i]);
  }
  out << (checks.empty() ? "]" : "\n  ]");
}

}  // namespace

bool RunReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::optional<CheckResult> RunReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return c;
  }
  return std::nullopt;
}

bool OscillatorReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

RunReport run(const config::RunConfig& cfg, const RunOptions& options) {
  const config::Model m = config::build_model(cfg);
  const auto& h = m.hamiltonian;
  const auto& f = m.observable;
  const int last = m.grid.n_steps();
  const int kubo_order = std::min(m.max_order, 2);
  const double f_scale = std::max(max_abs(f), std::numeric_limits<double>::min());

  const auto series = quadrature_series(f, h, m.grid, last, m.max_order);
  RunReport report;

  if (options.tables) {
    const auto exact = backward_profile(f, reference_propagate(h, m.grid), last);
    const auto residuals = partial_sums_and_residuals(series, exact, m.rho0);
    const Operator& rho = m.rho0.as_operator();
    for (int j = 0; j <= last; ++j) {
      const double tp = m.grid.node(j);
      const auto sj = static_cast<std::size_t>(j);
      for (int n = 0; n <= m.max_order; ++n) {
        const Complex v = trace_inner(series.at(n, j), rho);
        report.rows.push_back({tp, std::to_string(n), v.real(), v.imag(), std::nullopt});
      }
      const Complex ex = trace_inner(exact.values[sj], rho);
      report.rows.push_back({tp, "exact", ex.real(), ex.imag(), std::nullopt});
      for (int n = 0; n <= m.max_order; ++n) {
        const Complex v = trace_inner(series.partial_sum(n, j), rho);
        report.rows.push_back({tp, sum_label(n), v.real(), v.imag(),
                               residuals.operator_residual[static_cast<std::size_t>(n)][sj]});
      }
    }
  }

  report.checks.push_back(make_check("trace_identities", trace_identity_defect(h.dim(), options.seed),
                                     tolerance::kTraceIdentity));

  if (cfg.checks.conservation) {
    const auto table = propagate(h, m.grid);
    report.checks.push_back(make_check("conservation", conservation_profile(f, m.rho0, table, last),
                                       tolerance::kConservation));
  }

  if (cfg.checks.duality) {
    const auto dual = duality_report(f, m.rho0, h, m.grid, leading_orders(series, kubo_order));
    double worst = 0.0;
    for (std::size_t n = 0; n < dual.defects.size(); ++n) {
      worst = std::max(worst, dual.defects[n] / dual.scales[n]);
    }
    report.checks.push_back(make_check("duality", worst, tolerance::kDuality));
    report.checks.push_back(make_check("density_correction_hermitian_traceless",
                                       density_correction_defect(m, kubo_order),
                                       tolerance::kDensityCorrection));
  }

  if (cfg.checks.dyson) {
    double worst = 0.0;
    for (int n = 0; n <= kubo_order; ++n) {
      worst = std::max(worst, max_abs_diff(series.at(n, 0), dyson_oracle(f, h, m.grid, last, n)));
    }
    report.checks.push_back(make_check("dyson", worst / f_scale, tolerance::kDyson));
  }

  if (cfg.checks.routes) {
    const auto ode = term_ode(f, h, m.grid, last, m.max_order);
    report.checks.push_back(
        make_check("routes", max_series_difference(series, ode) / f_scale, tolerance::kRoutes));
    report.checks.push_back(make_check(
        "series_hermitian", std::max(series_hermitian_defect(series), series_hermitian_defect(ode)),
        tolerance::kHermitianSeries));
  }

  if (cfg.checks.lambda_scaling) {
    report.checks.push_back(
        make_check("lambda_scaling", lambda_scaling_defect(m, series), tolerance::kLambdaScaling));
  }
  return report;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs at least two points");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("slope fit needs distinct lambda values");
  return (n * sxy - sx * sy) / denom;
}

SweepReport sweep(const config::RunConfig& cfg, const std::vector<double>& lambdas) {
  if (lambdas.size() < 2) throw std::invalid_argument("sweep needs at least two lambda values");
  for (double l : lambdas) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw std::invalid_argument("sweep lambdas must be strictly positive");
    }
  }
  const config::Model m = config::build_model(cfg);
  double strongest = 0.0;
  for (const auto& term : m.hamiltonian.terms()) strongest = std::max(strongest, std::abs(term.strength));
  if (strongest == 0.0) throw std::invalid_argument("sweep needs a drive with nonzero strength");
  const auto unit = scale_strength(m.hamiltonian, 1.0 / strongest);
  const int last = m.grid.n_steps();

  SweepReport report;
  std::vector<std::vector<double>> residuals(static_cast<std::size_t>(m.max_order + 1));
  for (double lambda : lambdas) {
    const auto h = scale_strength(unit, lambda);
    const auto series = quadrature_series(m.observable, h, m.grid, last, m.max_order);
    const auto exact = backward_profile(m.observable, reference_propagate(h, m.grid), last);
    const auto table = partial_sums_and_residuals(series, exact, m.rho0);
    for (int n = 0; n <= m.max_order; ++n) {
      const double r = table.max_operator_residual(n);
      report.points.push_back({n, lambda, r});
      residuals[static_cast<std::size_t>(n)].push_back(r);
    }
  }
  for (const auto& r : residuals) {
    const bool all_positive = std::all_of(r.begin(), r.end(), [](double v) { return v > 0.0; });
    report.slopes.push_back(all_positive ? loglog_slope(lambdas, r)
                                         : std::numeric_limits<double>::quiet_NaN());
  }
  return report;
}

OscillatorReport run_oscillator(const config::RunConfig& cfg) {
  if (cfg.model.kind != config::ModelKind::oscillator) {
    throw config::ConfigError("model.preset: the oscillator subcommand needs the oscillator preset");
  }
  const auto& params = cfg.model.osc;
  const auto state = oscillator::coherent_state(params, cfg.oscillator.alpha);
  const int s = cfg.oscillator.samples;
  const double step = cfg.oscillator.t_max / (s - 1);
  const double mw = params.mass * params.omega;

  OscillatorReport report;
  double worst_error = 0.0;
  double worst_det = 0.0;
  double worst_textbook = 0.0;
  for (int i = 0; i < s; ++i) {
    const double t = i * step;
    for (int k = 0; k <= i; ++k) {
      const double tp = k * step;
      const auto c = oscillator::closed_form_coeffs(params, t, tp);
      const double err = oscillator::compare_analytic_numeric(params, t, tp, state);
      report.samples.push_back({t, tp, c.a, c.b, c.c, c.d, err});
      worst_error = std::max(worst_error, err);
      worst_det = std::max(worst_det, std::abs(c.determinant() - 1.0));
    }
    const auto h = oscillator::closed_form_coeffs(params, t, 0.0);
    const double wt = params.omega * t;
    worst_textbook = std::max({worst_textbook, std::abs(h.a - std::cos(wt)),
                               std::abs(h.b - std::sin(wt) / mw), std::abs(h.c + mw * std::sin(wt)),
                               std::abs(h.d - std::cos(wt))});
  }
  report.checks.push_back(make_check("analytic_vs_numeric", worst_error, tolerance::kOscillator));
  report.checks.push_back(make_check("symplectic", worst_det, tolerance::kSymplectic));
  report.checks.push_back(make_check("heisenberg_reduction", worst_textbook, tolerance::kSymplectic));
  return report;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "t_prime,order,value_re,value_im,residual\n";
  for (const auto& r : rows) {
    out << format_number(r.t_prime) << ',' << r.order << ',' << format_number(r.value_re) << ','
        << format_number(r.value_im) << ',';
    if (r.residual) out << format_number(*r.residual);
    out << '\n';
  }
}

void write_rows_json(std::ostream& out, const RunReport& report) {
  out << "{\n  \"rows\": [";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    out << (i ? ",\n    " : "\n    ") << "{\"t_prime\": " << format_number(r.t_prime)
        << ", \"order\": \"" << r.order << "\", \"value_re\": " << format_number(r.value_re)
        << ", \"value_im\": " << format_number(r.value_im)
        << ", \"residual\": " << (r.residual ? format_number(*r.residual) : "null") << "}";
  }
  out << (report.rows.empty() ? "],\n" : "\n  ],\n");
  write_json_checks(out, report.checks);
  out << "\n}\n";
}

void write_checks_csv(std::ostream& out, const std::vector<CheckResult>& checks) {
  out << "check,value,tolerance,passed\n";
  for (const auto& c : checks) {
    out << c.name << ',' << format_number(c.value) << ',' << format_number(c.tolerance) << ','
        << (c.passed ? "true" : "false") << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "record,partial_order,lambda,value\n";
  for (const auto& p : report.points) {
    out << "residual," << p.partial_order << ',' << format_number(p.lambda) << ','
        << format_number(p.residual) << '\n';
  }
  for (std::size_t n = 0; n < report.slopes.size(); ++n) {
    out << "slope," << n << ",," << format_number(report.slopes[n]) << '\n';
  }
}

void write_sweep_json(std::ostream& out, const SweepReport& report) {
  out << "{\n  \"points\": [";
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& p = report.points[i];
    out << (i ? ",\n    " : "\n    ") << "{\"partial_order\": " << p.partial_order
        << ", \"lambda\": " << format_number(p.lambda)
        << ", \"residual\": " << format_number(p.residual) << "}";
  }
  out << "\n  ],\n  \"slopes\": [";
  for (std::size_t n = 0; n < report.slopes.size(); ++n) {
    out << (n ? ", " : "") << (std::isnan(report.slopes[n]) ? "null" : format_number(report.slopes[n]));
  }
  out << "]\n}\n";
}

void write_oscillator_csv(std::ostream& out, const OscillatorReport& report) {
  out << "t,t_prime,a,b,c,d,error\n";
  for (const auto& s : report.samples) {
    out << format_number(s.t) << ',' << format_number(s.t_prime) << ',' << format_number(s.a) << ','
        << format_number(s.b) << ',' << format_number(s.c) << ',' << format_number(s.d) << ','
        << format_number(s.error) << '\n';
  }
}

void write_oscillator_json(std::ostream& out, const OscillatorReport& report) {
  out << "{\n  \"samples\": [";
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const auto& s = report.samples[i];
    out << (i ? ",\n    " : "\n    ") << "{\"t\": " << format_number(s.t)
        << ", \"t_prime\": " << format_number(s.t_prime) << ", \"a\": " << format_number(s.a)
        << ", \"b\": " << format_number(s.b) << ", \"c\": " << format_number(s.c)
        << ", \"d\": " << format_number(s.d) << ", \"error\": " << format_number(s.error) << "}";
  }
  out << "\n  ],\n";
  write_json_checks(out, report.checks);
  out << "\n}\n";
}

}  // namespace bhp::runner

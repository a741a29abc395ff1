#include "bhp/exact_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bhp {

namespace {

void check_index(const PropagatorTable& table, int t_index, const char* where) {
  if (t_index < 0 || t_index > table.last_index()) {
    throw DimensionError(std::string(where) + ": time index " + std::to_string(t_index) +
                         " outside the propagator grid");
  }
}

std::vector<double> drive_coefficients(const DrivenHamiltonian& h, double t) {
  std::vector<double> c;
  c.reserve(h.terms().size());
  for (const auto& term : h.terms()) c.push_back(term.strength * term.envelope(t));
  return c;
}

}  // namespace

PropagatorTable::PropagatorTable(DrivenHamiltonian h, TimeGrid grid, std::vector<Operator> u)
    : h_(std::move(h)), grid_(grid), u_(std::move(u)) {
  if (static_cast<int>(u_.size()) != grid_.n_nodes()) {
    throw DimensionError("propagator table needs one operator per grid node");
  }
}

const Operator& PropagatorTable::at(int j) const {
  if (j < 0 || j > last_index()) throw DimensionError("propagator index out of range");
  return u_[static_cast<std::size_t>(j)];
}

double PropagatorTable::max_unitarity_defect() const {
  double worst = 0.0;
  for (const auto& u : u_) worst = std::max(worst, unitarity_defect(u));
  return worst;
}

PropagatorTable propagate(const DrivenHamiltonian& h, const TimeGrid& grid) {
  const double dt = grid.dt();
  std::vector<Operator> u;
  u.reserve(static_cast<std::size_t>(grid.n_nodes()));
  u.push_back(Operator::identity(h.dim()));

  // Piecewise-constant stretches (step drives, finished pulses) reuse the last step.
  std::vector<double> cached_coeffs;
  Operator step;
  for (int j = 0; j < grid.n_steps(); ++j) {
    const double mid = grid.node(j) + 0.5 * dt;
    auto coeffs = drive_coefficients(h, mid);
    if (j == 0 || coeffs != cached_coeffs) {
      step = unitary_exp(eval_h(h, mid), dt / h.hbar());
      cached_coeffs = std::move(coeffs);
    }
    u.push_back(step * u.back());
  }
  return PropagatorTable(h, grid, std::move(u));
}

PropagatorTable reference_propagate(const DrivenHamiltonian& h, const TimeGrid& grid, int refine) {
  if (refine < 1) throw NumericError("refinement factor must be positive");
  if (refine == 1) return propagate(h, grid);
  const PropagatorTable fine = propagate(h, grid.refined(refine));
  std::vector<Operator> u;
  u.reserve(static_cast<std::size_t>(grid.n_nodes()));
  for (int j = 0; j <= grid.n_steps(); ++j) u.push_back(fine.at(j * refine));
  return PropagatorTable(h, grid, std::move(u));
}

Operator heisenberg_observable(const Operator& f, const PropagatorTable& table, int t_index) {
  check_index(table, t_index, "heisenberg_observable");
  require_same_dim(f, table.at(0), "heisenberg_observable");
  return conjugate_adjoint(table.at(t_index), f);
}

Operator backward_observable(const Operator& f, const PropagatorTable& table, int t_index,
                             int tprime_index) {
  check_index(table, t_index, "backward_observable");
  if (tprime_index < 0 || tprime_index > t_index) {
    throw DimensionError("backward_observable: backward time t' must satisfy 0 <= t' <= t");
  }
  return conjugate(table.at(tprime_index), heisenberg_observable(f, table, t_index));
}

BackwardObservable backward_profile(const Operator& f, const PropagatorTable& table, int t_index) {
  const Operator fh = heisenberg_observable(f, table, t_index);
  BackwardObservable out;
  out.t_index = t_index;
  out.values.reserve(static_cast<std::size_t>(t_index + 1));
  for (int j = 0; j <= t_index; ++j) out.values.push_back(conjugate(table.at(j), fh));
  return out;
}

DensityMatrix evolve_density(const DensityMatrix& rho0, const PropagatorTable& table,
                             int t_index) {
  check_index(table, t_index, "evolve_density");
  require_same_dim(rho0.as_operator(), table.at(0), "evolve_density");
  Matrix rho = conjugate(table.at(t_index), rho0.as_operator()).matrix();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

double conservation_profile(const Operator& f, const DensityMatrix& rho0,
                            const PropagatorTable& table, int t_index) {
  const auto fb = backward_profile(f, table, t_index);
  const Complex reference = trace_inner(fb.values.front(), rho0.as_operator());
  const double scale = std::max(1.0, std::abs(reference));
  double worst = 0.0;
  for (int j = 0; j <= t_index; ++j) {
    const Operator rho_j = conjugate(table.at(j), rho0.as_operator());
    const Complex value = trace_inner(fb.values[static_cast<std::size_t>(j)], rho_j);
    worst = std::max(worst, std::abs(value - reference) / scale);
  }
  return worst;
}

double ExpectationTriple::max_pairwise_defect() const {
  const double scale = std::max({1.0, std::abs(schrodinger), std::abs(heisenberg),
                                 std::abs(backward)});
  return std::max({std::abs(schrodinger - heisenberg), std::abs(schrodinger - backward),
                   std::abs(heisenberg - backward)}) /
         scale;
}

ExpectationTriple expectation_three_ways(const Operator& f, const DensityMatrix& rho0,
                                         const PropagatorTable& table, int t_index) {
  const DensityMatrix rho_t = evolve_density(rho0, table, t_index);
  return ExpectationTriple{
      expectation(f, rho_t),
      expectation(heisenberg_observable(f, table, t_index), rho0),
      expectation(backward_observable(f, table, t_index, 0), rho0),
  };
}

double backward_eom_residual(const Operator& f, const PropagatorTable& table, int t_index) {
  const auto fb = backward_profile(f, table, t_index);
  const auto& h = table.hamiltonian();
  const double dt = table.grid().dt();
  const Complex inv_ihbar = 1.0 / (kI * h.hbar());
  double worst = 0.0;
  for (int j = 1; j < t_index; ++j) {
    const auto& prev = fb.values[static_cast<std::size_t>(j - 1)];
    const auto& next = fb.values[static_cast<std::size_t>(j + 1)];
    const Operator fd = (next - prev) * (1.0 / (2.0 * dt));
    const Operator rhs =
        commutator(eval_h(h, table.grid().node(j)), fb.values[static_cast<std::size_t>(j)]) *
        inv_ihbar;
    worst = std::max(worst, max_abs_diff(fd, rhs));
  }
  return worst;
}

double heisenberg_eom_residual(const Operator& f, const PropagatorTable& table) {
  const auto& h = table.hamiltonian();
  const double dt = table.grid().dt();
  const Complex inv_ihbar = 1.0 / (kI * h.hbar());
  double worst = 0.0;
  for (int j = 1; j < table.last_index(); ++j) {
    const Operator fd = (heisenberg_observable(f, table, j + 1) -
                         heisenberg_observable(f, table, j - 1)) *
                        (1.0 / (2.0 * dt));
    const Operator hh = conjugate_adjoint(table.at(j), eval_h(h, table.grid().node(j)));
    const Operator rhs = -commutator(hh, heisenberg_observable(f, table, j)) * inv_ihbar;
    worst = std::max(worst, max_abs_diff(fd, rhs));
  }
  return worst;
}

}  // namespace bhp

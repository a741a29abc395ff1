#pragma once

// Numerically exact propagation for a driven Hamiltonian and the three
// pictures built on it: Schrodinger, Heisenberg and backward Heisenberg.

#include <vector>

#include "bhp/driven_hamiltonian.hpp"
#include "bhp/operator.hpp"

namespace bhp {

/// U(t_j) on every node of a uniform grid, with U(0) = I.
class PropagatorTable {
 public:
  PropagatorTable(DrivenHamiltonian h, TimeGrid grid, std::vector<Operator> u);

  const TimeGrid& grid() const { return grid_; }
  const DrivenHamiltonian& hamiltonian() const { return h_; }
  const Operator& at(int j) const;
  int last_index() const { return grid_.n_steps(); }
  static constexpr int scheme_order() { return 2; }
  /// max_j |U_j^dagger U_j - I|
  double max_unitarity_defect() const;

 private:
  DrivenHamiltonian h_;
  TimeGrid grid_;
  std::vector<Operator> u_;
};

/// Exponential midpoint stepping: U_{j+1} = exp(H(t_j + dt/2) dt / i hbar) U_j.
PropagatorTable propagate(const DrivenHamiltonian& h, const TimeGrid& grid);

/// Propagator sampled on `grid` but integrated on a grid `refine` times finer.
/// This is the reference the perturbative routes are measured against.
PropagatorTable reference_propagate(const DrivenHamiltonian& h, const TimeGrid& grid,
                                    int refine = 4);

/// F^B(t, t'_j) for every j with t'_j <= t.
struct BackwardObservable {
  int t_index = 0;
  std::vector<Operator> values;
};

/// U^dagger(t) F U(t)
Operator heisenberg_observable(const Operator& f, const PropagatorTable& table, int t_index);

/// U(t') U^dagger(t) F U(t) U^dagger(t'); requires t' <= t.
Operator backward_observable(const Operator& f, const PropagatorTable& table, int t_index,
                             int tprime_index);

BackwardObservable backward_profile(const Operator& f, const PropagatorTable& table, int t_index);

/// U(t) rho0 U^dagger(t)
DensityMatrix evolve_density(const DensityMatrix& rho0, const PropagatorTable& table, int t_index);

/// max_j |Tr{F^B(t,t'_j) rho(t'_j)} - Tr{F^B(t,0) rho0}| / max(1, |Tr{F^B(t,0) rho0}|)
double conservation_profile(const Operator& f, const DensityMatrix& rho0,
                            const PropagatorTable& table, int t_index);

struct ExpectationTriple {
  Complex schrodinger;  // Tr{F rho(t)}
  Complex heisenberg;   // Tr{F^H(t) rho0}
  Complex backward;     // Tr{F^B(t,0) rho0}
  double max_pairwise_defect() const;
};

ExpectationTriple expectation_three_ways(const Operator& f, const DensityMatrix& rho0,
                                         const PropagatorTable& table, int t_index);

/// Largest central-difference residual of i hbar d/dt' F^B = [H(t'), F^B] over
/// interior nodes 0 < j < t_index.
double backward_eom_residual(const Operator& f, const PropagatorTable& table, int t_index);

/// Largest central-difference residual of i hbar d/dt F^H = -[H^H(t), F^H] over
/// interior nodes of the whole table.
double heisenberg_eom_residual(const Operator& f, const PropagatorTable& table);

}  // namespace bhp

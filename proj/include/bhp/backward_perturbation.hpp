#pragma once

// Order-by-order expansion of the backward Heisenberg observable F^B(t, t')
// in powers of the drive, computed along two independent routes, plus a
// Dyson-series oracle for the Heisenberg terms F^H_n(t) = F^B_n(t, 0).

#include <stdexcept>
#include <vector>

#include "bhp/driven_hamiltonian.hpp"
#include "bhp/exact_evolution.hpp"
#include "bhp/operator.hpp"

namespace bhp {

class UnsupportedOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Trapezoid weights for the integral over [0, t_{t_index}] on the grid nodes 0..t_index.
std::vector<double> trapezoid_weights(const TimeGrid& grid, int t_index);

/// Free propagators U0(t_j) and interaction-picture drives
/// H1^I(t_j) = U0^dagger(t_j) H1(t_j) U0(t_j) for j = 0..t_index.
class InteractionFrame {
 public:
  InteractionFrame(const DrivenHamiltonian& h, const TimeGrid& grid, int t_index);

  int t_index() const { return t_index_; }
  const Operator& u0(int j) const { return u0_[static_cast<std::size_t>(j)]; }
  const Operator& h1(int j) const { return h1_[static_cast<std::size_t>(j)]; }
  /// Moves X from the interaction frame at node j back to the Schrodinger frame.
  Operator to_lab(const Operator& x, int j) const { return conjugate(u0(j), x); }

 private:
  int t_index_;
  std::vector<Operator> u0_;
  std::vector<Operator> h1_;
};

/// terms[n][j] = F^B_n(t, t'_j) for n = 0..max_order and j = 0..t_index.
struct PerturbationSeries {
  int t_index = 0;
  int max_order = 0;
  std::vector<std::vector<Operator>> terms;

  const Operator& at(int order, int j) const {
    return terms[static_cast<std::size_t>(order)][static_cast<std::size_t>(j)];
  }
  /// sum_{n <= up_to} F^B_n(t, t'_j)
  Operator partial_sum(int up_to, int j) const;
};

/// Formal-solution route: the recursion
///   F^B_n(t,t') = -(i hbar)^{-1} U0(t') [ int_{t'}^{t} U0^dag(tau) [H1(tau), F^B_{n-1}(t,tau)] U0(tau) dtau ] U0^dag(t')
/// evaluated with the trapezoid rule by a cumulative backward sweep.
PerturbationSeries quadrature_series(const Operator& f, const DrivenHamiltonian& h,
                                     const TimeGrid& grid, int t_index, int max_order);

/// Single order of quadrature_series.
std::vector<Operator> term_quadrature(const Operator& f, const DrivenHamiltonian& h,
                                      const TimeGrid& grid, int t_index, int order);

/// Terminal-value route: co-integrates
///   i hbar d/dt' F^B_n = [H0, F^B_n] + [H1(t'), F^B_{n-1}],  F^B_0(t,t) = F, F^B_n(t,t) = 0
/// backward from t' = t with a second-order exponential midpoint (Lawson) scheme.
/// The free part is applied exactly, so order 0 is free evolution to rounding.
PerturbationSeries term_ode(const Operator& f, const DrivenHamiltonian& h, const TimeGrid& grid,
                            int t_index, int max_order);

/// Order-n Heisenberg term from the time-ordered expansion of
/// U(t) = U0(t) T exp((i hbar)^{-1} int_0^t H1^I), collected at total order n.
/// Nested integrals use the forward trapezoid rule. Orders 0, 1 and 2 only.
Operator dyson_oracle(const Operator& f, const DrivenHamiltonian& h, const TimeGrid& grid,
                      int t_index, int order);

struct ResidualTable {
  /// operator_residual[n'][j] = max|sum_{n<=n'} F^B_n(t,t'_j) - F^B(t,t'_j)|
  std::vector<std::vector<double>> operator_residual;
  /// contracted_residual[n'][j] = |Tr{(sum_{n<=n'} F^B_n(t,t'_j) - F^B(t,t'_j)) rho0}|
  std::vector<std::vector<double>> contracted_residual;

  double max_operator_residual(int partial_order) const;
  double max_contracted_residual(int partial_order) const;
};

ResidualTable partial_sums_and_residuals(const PerturbationSeries& series,
                                         const BackwardObservable& exact,
                                         const DensityMatrix& rho0);

/// max over orders n <= max_order and nodes of |a.terms[n][j] - b.terms[n][j]|.
double max_series_difference(const PerturbationSeries& a, const PerturbationSeries& b);

/// Largest central-difference residual of
///   i hbar d/dt' F^B_n - [H0, F^B_n] - [H1(t'), F^B_{n-1}]
/// over interior nodes, for a single order.
double series_eom_residual(const PerturbationSeries& series, const DrivenHamiltonian& h,
                           const TimeGrid& grid, int order);

}  // namespace bhp

#pragma once

// State-side perturbation terms rho_1(t), rho_2(t) of rho(t) = rho0 + rho_1 + rho_2 + ...
// and their duality with the backward-picture observable terms:
//   Tr{rho_n(t) F} = Tr{F^B_n(t, 0) rho0}.

#include <vector>

#include "bhp/backward_perturbation.hpp"
#include "bhp/driven_hamiltonian.hpp"
#include "bhp/operator.hpp"

namespace bhp {

/// values[j] = rho_n(t_j) on grid nodes j = 0..last.
struct DensityCorrection {
  int order = 1;
  std::vector<Operator> values;
};

/// rho_1(t) = (i hbar)^{-1} int_0^t U0(t - tau) [H1(tau), rho0(tau)] U0^dag(t - tau) dtau,
/// with rho0(tau) = U0(tau) rho0 U0^dag(tau) (equal to rho0 for stationary states).
Operator rho1(const DensityMatrix& rho0, const DrivenHamiltonian& h, const TimeGrid& grid,
              int t_index);

/// rho_2(t) = (i hbar)^{-2} int_0^t dtau' int_0^tau' dtau''
///   U0(t - tau') [H1(tau'), U0(tau' - tau'') [H1(tau''), rho0(tau'')] U0^dag(tau' - tau'')] U0^dag(t - tau').
///
/// The discrete double sum carries exactly the pair weights of the backward
/// cumulative sweep in quadrature_series, reorganized by trace cyclicity, so the
/// order-2 duality holds node for node.
Operator rho2(const DensityMatrix& rho0, const DrivenHamiltonian& h, const TimeGrid& grid,
              int t_index);

/// rho_n(t_j) for every j = 0..t_index, n in {1, 2}, from a single sweep.
DensityCorrection density_correction(const DensityMatrix& rho0, const DrivenHamiltonian& h,
                                     const TimeGrid& grid, int t_index, int order);

/// defects[n] = |Tr{rho_n(t) F} - Tr{F^B_n(t,0) rho0}| for n = 0..max_order (max_order <= 2).
/// The n = 0 entry compares Tr{rho0 F^H_0(t)} with Tr{F^H_0(t) rho0}.
struct DualityReport {
  std::vector<Complex> state_side;
  std::vector<Complex> observable_side;
  std::vector<double> defects;
  /// max(1, |Tr{F^B_n(t,0) rho0}|)
  std::vector<double> scales;
};

DualityReport duality_report(const Operator& f, const DensityMatrix& rho0,
                             const DrivenHamiltonian& h, const TimeGrid& grid, int t_index,
                             int max_order);

/// Same, reusing an already computed quadrature series at the same t_index.
DualityReport duality_report(const Operator& f, const DensityMatrix& rho0,
                             const DrivenHamiltonian& h, const TimeGrid& grid,
                             const PerturbationSeries& series);

}  // namespace bhp

#include "bhp/kubo_response.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bhp {

namespace {

void check_request(const DensityMatrix& rho0, const DrivenHamiltonian& h, const TimeGrid& grid,
                   int t_index, int order) {
  require_same_dim(rho0.as_operator(), h.h0(), "density correction");
  if (t_index < 0 || t_index > grid.n_steps()) throw DimensionError("time index outside the grid");
  if (order < 1 || order > 2) {
    throw UnsupportedOrder("density corrections are implemented for orders 1 and 2");
  }
}

}  // namespace

DensityCorrection density_correction(const DensityMatrix& rho0, const DrivenHamiltonian& h,
                                     const TimeGrid& grid, int t_index, int order) {
  check_request(rho0, h, grid, t_index, order);
  const InteractionFrame frame(h, grid, t_index);
  const Complex a = 1.0 / (kI * h.hbar());
  const double dt = grid.dt();
  const double half_dt = 0.5 * dt;
  const Eigen::Index dim = h.dim();
  const Matrix& rho = rho0.matrix();

  DensityCorrection out;
  out.order = order;
  out.values.reserve(static_cast<std::size_t>(t_index + 1));
  out.values.push_back(Operator::zero(dim));

  // In the interaction frame rho0 is constant. With S_k = [H1^I_k, rho0]:
  //   inner_k = sum_{j<k} w_j S_j                (w_0 = dt/2, w_j = dt otherwise)
  //   rho_1(t_K) ~ inner_K + (dt/2) S_K
  //   rho_2(t_K) ~ sum_{k<K} w_k [H1^I_k, inner_k + (dt/2) S_k] + (dt/2) [H1^I_K, inner_K]
  Matrix inner = Matrix::Zero(dim, dim);
  Matrix outer = Matrix::Zero(dim, dim);
  for (int k = 0; k < t_index; ++k) {
    const Matrix& hk = frame.h1(k).matrix();
    const Matrix sk = hk * rho - rho * hk;
    const double wk = (k == 0) ? half_dt : dt;
    if (order == 2) {
      const Matrix rk = inner + half_dt * sk;
      outer += wk * (hk * rk - rk * hk);
    }
    inner += wk * sk;

    const int big_k = k + 1;
    const Matrix& hK = frame.h1(big_k).matrix();
    Matrix value;
    if (order == 1) {
      const Matrix sK = hK * rho - rho * hK;
      value = a * (inner + half_dt * sK);
    } else {
      value = (a * a) * (outer + half_dt * (hK * inner - inner * hK));
    }
    out.values.push_back(frame.to_lab(Operator(std::move(value)), big_k));
  }
  return out;
}

Operator rho1(const DensityMatrix& rho0, const DrivenHamiltonian& h, const TimeGrid& grid,
              int t_index) {
  return std::move(density_correction(rho0, h, grid, t_index, 1).values.back());
}

Operator rho2(const DensityMatrix& rho0, const DrivenHamiltonian& h, const TimeGrid& grid,
              int t_index) {
  return std::move(density_correction(rho0, h, grid, t_index, 2).values.back());
}

DualityReport duality_report(const Operator& f, const DensityMatrix& rho0,
                             const DrivenHamiltonian& h, const TimeGrid& grid,
                             const PerturbationSeries& series) {
  const int max_order = series.max_order;
  if (max_order > 2) throw UnsupportedOrder("duality is implemented up to order 2");
  require_same_dim(f, rho0.as_operator(), "duality_report");
  const Operator& rho = rho0.as_operator();

  DualityReport report;
  for (int n = 0; n <= max_order; ++n) {
    const Operator& fb = series.at(n, 0);
    const Complex observable_side = trace_inner(fb, rho);
    Complex state_side;
    if (n == 0) {
      state_side = trace_inner(rho, fb);
    } else {
      const Operator rho_n = n == 1 ? rho1(rho0, h, grid, series.t_index)
                                    : rho2(rho0, h, grid, series.t_index);
      state_side = trace_inner(rho_n, f);
    }
    report.state_side.push_back(state_side);
    report.observable_side.push_back(observable_side);
    report.defects.push_back(std::abs(state_side - observable_side));
    report.scales.push_back(std::max(1.0, std::abs(observable_side)));
  }
  return report;
}

DualityReport duality_report(const Operator& f, const DensityMatrix& rho0,
                             const DrivenHamiltonian& h, const TimeGrid& grid, int t_index,
                             int max_order) {
  if (max_order < 0 || max_order > 2) {
    throw UnsupportedOrder("duality is implemented for orders 0 through 2");
  }
  return duality_report(f, rho0, h, grid, quadrature_series(f, h, grid, t_index, max_order));
}

}  // namespace bhp

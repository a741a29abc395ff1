#include "bhp/backward_perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bhp {

namespace {

void check_request(const DrivenHamiltonian& h, const Operator& f, const TimeGrid& grid,
                   int t_index, int max_order) {
  require_same_dim(f, h.h0(), "perturbation series");
  if (t_index < 0 || t_index > grid.n_steps()) {
    throw DimensionError("time index " + std::to_string(t_index) + " outside the grid");
  }
  if (max_order < 0) throw UnsupportedOrder("perturbation order must be non-negative");
}

Complex inverse_ihbar(const DrivenHamiltonian& h) { return 1.0 / (kI * h.hbar()); }

}  // namespace

std::vector<double> trapezoid_weights(const TimeGrid& grid, int t_index) {
  std::vector<double> w(static_cast<std::size_t>(t_index + 1), grid.dt());
  if (t_index == 0) {
    w[0] = 0.0;
  } else {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

InteractionFrame::InteractionFrame(const DrivenHamiltonian& h, const TimeGrid& grid, int t_index)
    : t_index_(t_index) {
  const FreePropagator u0(h);
  u0_.reserve(static_cast<std::size_t>(t_index + 1));
  h1_.reserve(static_cast<std::size_t>(t_index + 1));
  for (int j = 0; j <= t_index; ++j) {
    const double tj = grid.node(j);
    u0_.push_back(u0(tj));
    h1_.push_back(conjugate_adjoint(u0_.back(), eval_h1(h, tj)));
  }
}

Operator PerturbationSeries::partial_sum(int up_to, int j) const {
  Operator sum = at(0, j);
  for (int n = 1; n <= up_to; ++n) sum += at(n, j);
  return sum;
}

PerturbationSeries quadrature_series(const Operator& f, const DrivenHamiltonian& h,
                                     const TimeGrid& grid, int t_index, int max_order) {
  check_request(h, f, grid, t_index, max_order);
  const InteractionFrame frame(h, grid, t_index);
  const Complex a = inverse_ihbar(h);
  const double half_dt = 0.5 * grid.dt();
  const auto nodes = static_cast<std::size_t>(t_index + 1);

  PerturbationSeries series{t_index, max_order, {}};
  series.terms.resize(static_cast<std::size_t>(max_order + 1));

  // Interaction-frame terms G_n(j) = U0^dag(t'_j) F^B_n(t,t'_j) U0(t'_j).
  // G_0 is constant: U0^dag(t) F U0(t).
  std::vector<Operator> g(nodes, conjugate_adjoint(frame.u0(t_index), f));
  auto& order0 = series.terms[0];
  order0.reserve(nodes);
  for (int j = 0; j <= t_index; ++j) order0.push_back(frame.to_lab(g[static_cast<std::size_t>(j)], j));

  std::vector<Operator> source(nodes);
  for (int n = 1; n <= max_order; ++n) {
    for (int j = 0; j <= t_index; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      source[sj] = commutator(frame.h1(j), g[sj]);
    }
    // Cumulative sweep from the terminal node: G_n(t) = 0,
    // G_n(t'_j) = G_n(t'_{j+1}) - a (dt/2) (S_j + S_{j+1}).
    g.back() = Operator::zero(h.dim());
    for (int j = t_index - 1; j >= 0; --j) {
      const auto sj = static_cast<std::size_t>(j);
      g[sj] = g[sj + 1] - (source[sj] + source[sj + 1]) * (a * half_dt);
    }
    auto& out = series.terms[static_cast<std::size_t>(n)];
    out.reserve(nodes);
    for (int j = 0; j <= t_index; ++j) out.push_back(frame.to_lab(g[static_cast<std::size_t>(j)], j));
  }
  return series;
}

std::vector<Operator> term_quadrature(const Operator& f, const DrivenHamiltonian& h,
                                      const TimeGrid& grid, int t_index, int order) {
  auto series = quadrature_series(f, h, grid, t_index, order);
  return std::move(series.terms.back());
}

PerturbationSeries term_ode(const Operator& f, const DrivenHamiltonian& h, const TimeGrid& grid,
                            int t_index, int max_order) {
  check_request(h, f, grid, t_index, max_order);
  const Complex a = inverse_ihbar(h);
  const double dt = grid.dt();
  const auto orders = static_cast<std::size_t>(max_order + 1);

  // Free backward flow over a step of length s: X -> U0^dag(s) X U0(s).
  const Operator full = free_propagator(h, dt);
  const Operator half = free_propagator(h, 0.5 * dt);
  auto flow_full = [&](const Operator& x) { return conjugate_adjoint(full, x); };
  auto flow_half = [&](const Operator& x) { return conjugate_adjoint(half, x); };

  PerturbationSeries series{t_index, max_order, {}};
  series.terms.assign(orders, std::vector<Operator>(static_cast<std::size_t>(t_index + 1)));

  std::vector<Operator> y(orders, Operator::zero(h.dim()));
  y[0] = f;
  for (std::size_t n = 0; n < orders; ++n) series.terms[n][static_cast<std::size_t>(t_index)] = y[n];

  std::vector<Operator> mid(orders);
  for (int j = t_index - 1; j >= 0; --j) {
    const double t_start = grid.node(j + 1);
    const Operator h1_start = eval_h1(h, t_start);
    const Operator h1_mid = eval_h1(h, t_start - 0.5 * dt);

    mid[0] = flow_half(y[0]);
    for (std::size_t n = 1; n < orders; ++n) {
      const Operator k1 = commutator(h1_start, y[n - 1]) * (-a);
      mid[n] = flow_half(y[n] + k1 * (0.5 * dt));
    }
    for (std::size_t n = orders; n-- > 0;) {
      Operator next = flow_full(y[n]);
      if (n > 0) next += flow_half(commutator(h1_mid, mid[n - 1]) * (-a * dt));
      y[n] = std::move(next);
    }
    for (std::size_t n = 0; n < orders; ++n) series.terms[n][static_cast<std::size_t>(j)] = y[n];
  }
  return series;
}

Operator dyson_oracle(const Operator& f, const DrivenHamiltonian& h, const TimeGrid& grid,
                      int t_index, int order) {
  if (order < 0 || order > 2) {
    throw UnsupportedOrder("dyson_oracle supports orders 0, 1 and 2; requested " +
                           std::to_string(order));
  }
  check_request(h, f, grid, t_index, order);
  const InteractionFrame frame(h, grid, t_index);
  const Operator f0 = conjugate_adjoint(frame.u0(t_index), f);
  if (order == 0) return f0;

  const Complex a = inverse_ihbar(h);
  const auto w = trapezoid_weights(grid, t_index);
  const double half_dt = 0.5 * grid.dt();

  // V1 = a int_0^t H1^I,  V2 = a^2 int_0^t dtau1 H1^I(tau1) int_0^tau1 dtau2 H1^I(tau2).
  Matrix v1 = Matrix::Zero(h.dim(), h.dim());
  Matrix v2 = Matrix::Zero(h.dim(), h.dim());
  Matrix inner = Matrix::Zero(h.dim(), h.dim());
  for (int j = 0; j <= t_index; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    const Matrix& hj = frame.h1(j).matrix();
    if (j > 0) inner += half_dt * (frame.h1(j - 1).matrix() + hj);
    v1 += w[sj] * hj;
    if (order == 2) v2 += w[sj] * hj * inner;
  }
  v1 *= a;
  v2 *= a * a;

  const Matrix& fm = f0.matrix();
  if (order == 1) return Operator(v1.adjoint() * fm + fm * v1);
  return Operator(v2.adjoint() * fm + v1.adjoint() * fm * v1 + fm * v2);
}

double ResidualTable::max_operator_residual(int partial_order) const {
  const auto& row = operator_residual.at(static_cast<std::size_t>(partial_order));
  return *std::max_element(row.begin(), row.end());
}

double ResidualTable::max_contracted_residual(int partial_order) const {
  const auto& row = contracted_residual.at(static_cast<std::size_t>(partial_order));
  return *std::max_element(row.begin(), row.end());
}

ResidualTable partial_sums_and_residuals(const PerturbationSeries& series,
                                         const BackwardObservable& exact,
                                         const DensityMatrix& rho0) {
  if (exact.t_index != series.t_index) {
    throw DimensionError("series and exact observable use different outer times");
  }
  ResidualTable table;
  const auto nodes = static_cast<std::size_t>(series.t_index + 1);
  for (int order = 0; order <= series.max_order; ++order) {
    std::vector<double> op_row(nodes);
    std::vector<double> tr_row(nodes);
    for (int j = 0; j <= series.t_index; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      const Operator diff = series.partial_sum(order, j) - exact.values[sj];
      op_row[sj] = max_abs(diff);
      tr_row[sj] = std::abs(trace_inner(diff, rho0.as_operator()));
    }
    table.operator_residual.push_back(std::move(op_row));
    table.contracted_residual.push_back(std::move(tr_row));
  }
  return table;
}

double max_series_difference(const PerturbationSeries& a, const PerturbationSeries& b) {
  if (a.t_index != b.t_index) throw DimensionError("series use different outer times");
  const int orders = std::min(a.max_order, b.max_order);
  double worst = 0.0;
  for (int n = 0; n <= orders; ++n) {
    for (int j = 0; j <= a.t_index; ++j) worst = std::max(worst, max_abs_diff(a.at(n, j), b.at(n, j)));
  }
  return worst;
}

double series_eom_residual(const PerturbationSeries& series, const DrivenHamiltonian& h,
                           const TimeGrid& grid, int order) {
  if (order < 0 || order > series.max_order) throw UnsupportedOrder("order not in series");
  const double dt = grid.dt();
  const Complex a = inverse_ihbar(h);
  double worst = 0.0;
  for (int j = 1; j < series.t_index; ++j) {
    const Operator fd = (series.at(order, j + 1) - series.at(order, j - 1)) * (1.0 / (2.0 * dt));
    Operator rhs = commutator(h.h0(), series.at(order, j));
    if (order > 0) rhs += commutator(eval_h1(h, grid.node(j)), series.at(order - 1, j));
    worst = std::max(worst, max_abs_diff(fd, rhs * a));
  }
  return worst;
}

}  // namespace bhp

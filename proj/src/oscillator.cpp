#include "bhp/oscillator.hpp"

#include <cmath>
#include <string>

#include "bhp/driven_hamiltonian.hpp"

namespace bhp::oscillator {

namespace {

constexpr double kTruncationWeight = 1e-8;

void check_times(double t, double tprime) {
  if (!std::isfinite(t) || !std::isfinite(tprime)) throw NumericError("times must be finite");
  if (tprime > t) throw DimensionError("backward time t' must not exceed t");
}

Complex expect(const StateVector& psi, const Operator& op) {
  const Vector& v = psi.amplitudes();
  return v.dot(op.matrix() * v);
}

}  // namespace

void Params::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw NumericError("oscillator mass must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw NumericError("oscillator frequency must be positive");
  }
  if (fock_dim < 2) throw NumericError("fock_dim must be at least 2");
}

QuadratureCoefficients closed_form_coeffs(const Params& params, double t, double tprime) {
  params.validate();
  check_times(t, tprime);
  const double phase = params.omega * (t - tprime);
  const double mw = params.mass * params.omega;
  const double s = std::sin(phase);
  const double c = std::cos(phase);
  return {c, s / mw, -mw * s, c};
}

FockOperators fock_operators(const Params& params) {
  params.validate();
  const Eigen::Index n = params.fock_dim;
  const double hbar = params.units.hbar();
  Matrix lower = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) lower(k - 1, k) = std::sqrt(static_cast<double>(k));
  const Matrix raise = lower.adjoint();

  const double x_scale = std::sqrt(hbar / (2.0 * params.mass * params.omega));
  const double p_scale = std::sqrt(params.mass * params.omega * hbar / 2.0);
  Operator x = Operator::hermitian(x_scale * (raise + lower));
  Operator p = Operator::hermitian(kI * p_scale * (raise - lower));
  Matrix h = p.matrix() * p.matrix() / (2.0 * params.mass) +
             0.5 * params.mass * params.omega * params.omega * x.matrix() * x.matrix();
  h = 0.5 * (h + h.adjoint()).eval();
  return {std::move(x), std::move(p), Operator::hermitian(std::move(h))};
}

StateVector coherent_state(const Params& params, Complex alpha) {
  params.validate();
  Vector v(params.fock_dim);
  Complex coeff = std::exp(-0.5 * std::norm(alpha));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k > 0) coeff *= alpha / std::sqrt(static_cast<double>(k));
    v(k) = coeff;
  }
  return StateVector::normalized(std::move(v));
}

double top_quarter_weight(const StateVector& state) {
  const Eigen::Index n = state.dim();
  const Eigen::Index first = n - n / 4;
  return state.amplitudes().tail(n - first).squaredNorm();
}

double compare_analytic_numeric(const Params& params, double t, double tprime,
                                const StateVector& state) {
  params.validate();
  check_times(t, tprime);
  if (state.dim() != params.fock_dim) throw DimensionError("state does not match fock_dim");
  if (const double w = top_quarter_weight(state); w > kTruncationWeight) {
    throw TruncationError("state has weight " + std::to_string(w) +
                          " on the top quarter of the Fock space");
  }

  const auto ops = fock_operators(params);
  const DrivenHamiltonian h(ops.h0, {}, params.units);
  const FreePropagator u0(h);
  const Operator ut = u0(t);
  const Operator utp = u0(tprime);
  auto backward = [&](const Operator& f) { return conjugate(utp, conjugate_adjoint(ut, f)); };

  const auto k = closed_form_coeffs(params, t, tprime);
  const Complex x0 = expect(state, ops.x);
  const Complex p0 = expect(state, ops.p);
  const Complex xb = expect(state, backward(ops.x));
  const Complex pb = expect(state, backward(ops.p));
  return std::abs(xb - (k.a * x0 + k.b * p0)) + std::abs(pb - (k.c * x0 + k.d * p0));
}

}  // namespace bhp::oscillator

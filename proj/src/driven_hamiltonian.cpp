#include "bhp/driven_hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bhp {

namespace {

struct EnvelopeEvaluator {
  double t;

  double operator()(const envelope::Step& s) const { return s.amplitude; }

  double operator()(const envelope::Sinusoid& s) const {
    return s.amplitude * std::cos(s.frequency * t + s.phase);
  }

  double operator()(const envelope::GaussianPulse& g) const {
    const double z = (t - g.center) / g.width;
    return g.amplitude * std::exp(-0.5 * z * z);
  }

  double operator()(const envelope::Polynomial& p) const {
    double acc = 0.0;
    for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  double operator()(const envelope::PiecewiseLinear& p) const {
    const auto& k = p.knots;
    if (k.empty()) return 0.0;
    if (t <= k.front().first) return k.front().second;
    if (t >= k.back().first) return k.back().second;
    auto hi = std::upper_bound(k.begin(), k.end(), t,
                               [](double x, const auto& knot) { return x < knot.first; });
    auto lo = std::prev(hi);
    const double w = (t - lo->first) / (hi->first - lo->first);
    return (1.0 - w) * lo->second + w * hi->second;
  }
};

void validate_shape(const Envelope::Shape& shape) {
  if (const auto* g = std::get_if<envelope::GaussianPulse>(&shape); g && !(g->width > 0.0)) {
    throw NumericError("gaussian_pulse width must be positive");
  }
  if (const auto* p = std::get_if<envelope::PiecewiseLinear>(&shape)) {
    for (std::size_t i = 1; i < p->knots.size(); ++i) {
      if (!(p->knots[i].first > p->knots[i - 1].first)) {
        throw NumericError("piecewise_linear knots must have strictly increasing times");
      }
    }
  }
}

}  // namespace

Envelope::Envelope(Shape shape) : shape_(std::move(shape)) { validate_shape(shape_); }

double Envelope::operator()(double t) const {
  if (t < 0.0) return 0.0;
  return std::visit(EnvelopeEvaluator{t}, shape_);
}

DrivenHamiltonian::DrivenHamiltonian(Operator h0, std::vector<PerturbationTerm> terms, Units units)
    : h0_(std::move(h0)), terms_(std::move(terms)), units_(units) {
  if (!h0_.is_hermitian()) throw NumericError("h0 must be Hermitian");
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    auto& term = terms_[k];
    require_same_dim(h0_, term.op, "drive term");
    if (!term.op.is_hermitian()) {
      throw NumericError("drive operator " + std::to_string(k) + " must be Hermitian");
    }
    if (!std::isfinite(term.strength)) throw NumericError("drive strength must be finite");
  }
}

TimeGrid::TimeGrid(double t_final, int n_steps) : t_final_(t_final), n_steps_(n_steps) {
  if (!(t_final > 0.0) || !std::isfinite(t_final)) throw NumericError("t_final must be positive");
  if (n_steps < 1) throw NumericError("n_steps must be positive");
}

double TimeGrid::node(int j) const {
  if (j < 0 || j > n_steps_) throw DimensionError("grid index out of range");
  if (j == n_steps_) return t_final_;
  return static_cast<double>(j) * dt();
}

TimeGrid TimeGrid::refined(int factor) const { return TimeGrid(t_final_, n_steps_ * factor); }

Operator eval_h1(const DrivenHamiltonian& h, double t) {
  Matrix out = Matrix::Zero(h.dim(), h.dim());
  if (t >= 0.0) {
    for (const auto& term : h.terms()) {
      const double c = term.strength * term.envelope(t);
      if (c != 0.0) out += c * term.op.matrix();
    }
  }
  return Operator::hermitian(std::move(out));
}

Operator eval_h(const DrivenHamiltonian& h, double t) {
  return Operator::hermitian(h.h0().matrix() + eval_h1(h, t).matrix());
}

Operator free_propagator(const DrivenHamiltonian& h, double t) {
  return unitary_exp(h.h0(), t / h.hbar());
}

DrivenHamiltonian scale_strength(const DrivenHamiltonian& h, double factor) {
  auto terms = h.terms();
  for (auto& term : terms) term.strength *= factor;
  return DrivenHamiltonian(h.h0(), std::move(terms), h.units());
}

DrivenHamiltonian unperturbed(const DrivenHamiltonian& h) {
  return DrivenHamiltonian(h.h0(), {}, h.units());
}

FreePropagator::FreePropagator(const DrivenHamiltonian& h) : hbar_(h.hbar()) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h.h0().matrix());
  eigenvectors_ = eig.eigenvectors();
  energies_ = eig.eigenvalues();
}

Operator FreePropagator::operator()(double t) const {
  Vector phases(energies_.size());
  for (Eigen::Index k = 0; k < energies_.size(); ++k) {
    phases(k) = std::polar(1.0, -energies_(k) * t / hbar_);
  }
  return Operator(eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint());
}

}  // namespace bhp

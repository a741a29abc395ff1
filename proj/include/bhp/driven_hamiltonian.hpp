#pragma once

// H(t) = H0 + sum_k lambda_k f_k(t) A_k, with every drive switched on at t = 0.

#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "bhp/operator.hpp"

namespace bhp {

namespace envelope {

struct Step {
  double amplitude = 1.0;
  bool operator==(const Step&) const = default;
};

/// amplitude * cos(frequency * t + phase)
struct Sinusoid {
  double amplitude = 1.0;
  double frequency = 1.0;
  double phase = 0.0;
  bool operator==(const Sinusoid&) const = default;
};

/// amplitude * exp(-(t - center)^2 / (2 width^2))
struct GaussianPulse {
  double amplitude = 1.0;
  double center = 0.0;
  double width = 1.0;
  bool operator==(const GaussianPulse&) const = default;
};

/// sum_k coefficients[k] * t^k
struct Polynomial {
  std::vector<double> coefficients;
  bool operator==(const Polynomial&) const = default;
};

/// Linear interpolation through (time, value) knots; held constant outside them.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> knots;
  bool operator==(const PiecewiseLinear&) const = default;
};

}  // namespace envelope

/// Real drive profile. Identically zero for t < 0; f(0) is the switched-on value.
class Envelope {
 public:
  using Shape = std::variant<envelope::Step, envelope::Sinusoid, envelope::GaussianPulse,
                             envelope::Polynomial, envelope::PiecewiseLinear>;

  Envelope() = default;
  Envelope(Shape shape);  // NOLINT(google-explicit-constructor)
  template <typename S>
    requires(!std::is_same_v<std::remove_cvref_t<S>, Envelope> &&
             !std::is_same_v<std::remove_cvref_t<S>, Shape> && std::is_constructible_v<Shape, S>)
  Envelope(S&& shape)  // NOLINT(google-explicit-constructor)
      : Envelope(Shape(std::forward<S>(shape))) {}

  double operator()(double t) const;
  const Shape& shape() const { return shape_; }
  bool operator==(const Envelope&) const = default;

 private:
  Shape shape_ = envelope::Step{};
};

struct PerturbationTerm {
  double strength = 0.0;
  Envelope envelope;
  Operator op;
};

class DrivenHamiltonian {
 public:
  /// Validates Hermitian h0 and term operators of a common dimension.
  DrivenHamiltonian(Operator h0, std::vector<PerturbationTerm> terms = {}, Units units = Units{});

  const Operator& h0() const { return h0_; }
  const std::vector<PerturbationTerm>& terms() const { return terms_; }
  const Units& units() const { return units_; }
  double hbar() const { return units_.hbar(); }
  Eigen::Index dim() const { return h0_.dim(); }

 private:
  Operator h0_;
  std::vector<PerturbationTerm> terms_;
  Units units_;
};

/// Uniform grid t_j = j * t_final / n_steps, j = 0..n_steps.
class TimeGrid {
 public:
  TimeGrid(double t_final, int n_steps);

  double t_final() const { return t_final_; }
  int n_steps() const { return n_steps_; }
  int n_nodes() const { return n_steps_ + 1; }
  double dt() const { return t_final_ / n_steps_; }
  double node(int j) const;
  /// Same interval with n_steps multiplied by `factor`.
  TimeGrid refined(int factor) const;
  bool operator==(const TimeGrid&) const = default;

 private:
  double t_final_;
  int n_steps_;
};

Operator eval_h1(const DrivenHamiltonian& h, double t);
Operator eval_h(const DrivenHamiltonian& h, double t);

/// U0(t) = exp(H0 t / i hbar).
Operator free_propagator(const DrivenHamiltonian& h, double t);

/// Multiplies every drive strength by `factor`; h0 is untouched.
DrivenHamiltonian scale_strength(const DrivenHamiltonian& h, double factor);

/// Same H0 and units, no drive.
DrivenHamiltonian unperturbed(const DrivenHamiltonian& h);

/// Caches the eigendecomposition of H0 so U0(s) costs one product per call.
class FreePropagator {
 public:
  explicit FreePropagator(const DrivenHamiltonian& h);
  Operator operator()(double t) const;

 private:
  Matrix eigenvectors_;
  Eigen::VectorXd energies_;
  double hbar_;
};

}  // namespace bhp

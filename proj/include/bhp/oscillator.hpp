#pragma once

// Harmonic oscillator H = p^2/2m + m w^2 x^2/2: closed-form backward-picture
// quadratures and their check against a truncated Fock-space computation.

#include <stdexcept>

#include "bhp/operator.hpp"

namespace bhp::oscillator {

/// The state puts too much weight near the Fock cutoff for a faithful comparison.
class TruncationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Params {
  double mass = 1.0;
  double omega = 1.0;
  int fock_dim = 64;
  Units units{};

  void validate() const;
  bool operator==(const Params&) const = default;
};

/// x(t,t') = a x + b p,  p(t,t') = c x + d p
struct QuadratureCoefficients {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double d = 1.0;

  double determinant() const { return a * d - b * c; }
};

/// Unique solution of d/dt' x = -p/m, d/dt' p = m w^2 x with x(t,t) = x, p(t,t) = p:
/// a = d = cos w(t-t'), b = sin w(t-t') / (m w), c = -m w sin w(t-t').
QuadratureCoefficients closed_form_coeffs(const Params& params, double t, double tprime);

struct FockOperators {
  Operator x;
  Operator p;
  Operator h0;
};

/// Truncated ladder-operator matrices; h0 is built from the truncated x and p.
FockOperators fock_operators(const Params& params);

/// Coherent state |alpha> truncated to the Fock space and renormalized.
StateVector coherent_state(const Params& params, Complex alpha);

/// Probability of the state on the top quarter of the Fock space.
double top_quarter_weight(const StateVector& state);

/// |<x^B(t,t')> - (a<x> + b<p>)| + |<p^B(t,t')> - (c<x> + d<p>)|, with x^B, p^B
/// computed as U0(t') U0^dag(t) X U0(t) U0^dag(t') on the truncated space.
/// Throws TruncationError if the state's top-quarter weight exceeds 1e-8.
double compare_analytic_numeric(const Params& params, double t, double tprime,
                                const StateVector& state);

}  // namespace bhp::oscillator

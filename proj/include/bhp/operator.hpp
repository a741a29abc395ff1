#pragma once

// Dense complex operator algebra on a finite-dimensional Hilbert space.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bhp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Relative tolerance used when an operator is required to be Hermitian.
inline constexpr double kHermitianTol = 1e-12;

/// Raised when two operators (or an operator and a state) live on different spaces.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for non-finite input or a violated numerical precondition.
class NumericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Planck constant in the chosen unit system.
class Units {
 public:
  explicit Units(double hbar = 1.0);
  double hbar() const { return hbar_; }
  bool operator==(const Units&) const = default;

 private:
  double hbar_;
};

/// Square complex matrix with an optional Hermiticity certificate.
///
/// The certificate is only set by `Operator::hermitian`, which validates it,
/// and survives adjoint and real scaling. Every other arithmetic result drops it.
class Operator {
 public:
  Operator() = default;
  explicit Operator(Matrix entries);

  /// Builds an operator and certifies Hermiticity; throws NumericError otherwise.
  static Operator hermitian(Matrix entries, double rtol = kHermitianTol);
  static Operator zero(Eigen::Index dim);
  static Operator identity(Eigen::Index dim);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& matrix() const { return entries_; }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  std::optional<bool> hermitian_hint() const { return hermitian_hint_; }

  bool is_hermitian(double rtol = kHermitianTol) const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(Complex factor);
  Operator& operator*=(double factor);

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(const Operator& lhs, const Operator& rhs);
  friend Operator operator*(Operator op, Complex c) { return op *= c; }
  friend Operator operator*(Complex c, Operator op) { return op *= c; }
  friend Operator operator*(Operator op, double c) { return op *= c; }
  friend Operator operator*(double c, Operator op) { return op *= c; }
  friend Operator operator-(Operator op) { return op *= -1.0; }

 private:
  Matrix entries_;
  std::optional<bool> hermitian_hint_;
};

/// Normalized pure state.
class StateVector {
 public:
  /// Throws NumericError unless the Euclidean norm is 1 within 1e-12.
  explicit StateVector(Vector amplitudes);
  /// Normalizes the amplitudes first; throws on a zero vector.
  static StateVector normalized(Vector amplitudes);
  static StateVector basis(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  Vector amplitudes_;
};

/// Physical density operator: Hermitian, unit trace, positive within 1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);
  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);
  /// exp(-beta H) / Z for a Hermitian H.
  static DensityMatrix thermal(const Operator& h, double beta);

  Eigen::Index dim() const { return op_.dim(); }
  const Matrix& matrix() const { return op_.matrix(); }
  const Operator& as_operator() const { return op_; }
  double purity() const;

 private:
  Operator op_;
};

Operator adjoint(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

/// General matrix exponential (scaling and squaring with Pade approximants).
Operator mat_exp(const Operator& a);

/// exp(-i s H) for Hermitian H, evaluated through its eigendecomposition.
Operator unitary_exp(const Operator& h, double s);

/// Tr(A B). The summation is symmetric in the two arguments, so
/// trace_inner(A, B) and trace_inner(B, A) agree bit for bit.
Complex trace_inner(const Operator& a, const Operator& b);
Complex trace(const Operator& a);

/// Tr{F rho}.
Complex expectation(const Operator& f, const DensityMatrix& rho);

double max_abs(const Operator& a);
double frobenius(const Operator& a);
/// max|A - B| (entrywise).
double max_abs_diff(const Operator& a, const Operator& b);
/// max|A - A^dagger| / max|A|; zero for the zero matrix.
double hermitian_defect(const Operator& a);
/// max|A^dagger A - I|.
double unitarity_defect(const Operator& u);

/// U A U^dagger.
Operator conjugate(const Operator& u, const Operator& a);
/// U^dagger A U.
Operator conjugate_adjoint(const Operator& u, const Operator& a);

void require_same_dim(const Operator& a, const Operator& b, const char* where);

namespace pauli {
Operator x();
Operator y();
Operator z();
}  // namespace pauli

}  // namespace bhp

#include "bhp/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace bhp {

namespace {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

Units::Units(double hbar) : hbar_(hbar) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) {
    throw NumericError("hbar must be a positive finite number");
  }
}

Operator::Operator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw DimensionError("operator matrix must be square, got " + std::to_string(entries_.rows()) +
                         "x" + std::to_string(entries_.cols()));
  }
  if (entries_.rows() == 0) throw DimensionError("operator dimension must be positive");
}

Operator Operator::hermitian(Matrix entries, double rtol) {
  Operator op(std::move(entries));
  if (!op.is_hermitian(rtol)) {
    throw NumericError("matrix is not Hermitian (relative defect " +
                       std::to_string(hermitian_defect(op)) + ")");
  }
  op.hermitian_hint_ = true;
  return op;
}

Operator Operator::zero(Eigen::Index dim) {
  Operator op(Matrix::Zero(dim, dim));
  op.hermitian_hint_ = true;
  return op;
}

Operator Operator::identity(Eigen::Index dim) {
  Operator op(Matrix::Identity(dim, dim));
  op.hermitian_hint_ = true;
  return op;
}

bool Operator::is_hermitian(double rtol) const { return hermitian_defect(*this) <= rtol; }

Operator& Operator::operator+=(const Operator& other) {
  require_same_dim(*this, other, "operator +");
  entries_ += other.entries_;
  hermitian_hint_.reset();
  return *this;
}

Operator& Operator::operator-=(const Operator& other) {
  require_same_dim(*this, other, "operator -");
  entries_ -= other.entries_;
  hermitian_hint_.reset();
  return *this;
}

Operator& Operator::operator*=(Complex factor) {
  entries_ *= factor;
  hermitian_hint_.reset();
  return *this;
}

Operator& Operator::operator*=(double factor) {
  entries_ *= factor;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_dim(lhs, rhs, "operator *");
  return Operator(lhs.entries_ * rhs.entries_);
}

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("state dimension must be positive");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12) {
    throw NumericError("state vector is not normalized (norm " +
                       std::to_string(amplitudes_.norm()) + ")");
  }
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericError("cannot normalize a zero state");
  amplitudes /= norm;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries) : op_(std::move(entries)) {
  if (!all_finite(op_.matrix())) throw NumericError("density matrix has non-finite entries");
  if (!op_.is_hermitian()) throw NumericError("density matrix is not Hermitian");
  const Complex tr = trace(op_);
  if (std::abs(tr - 1.0) > 1e-12) {
    throw NumericError("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(op_.matrix(), Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw NumericError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::thermal(const Operator& h, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw NumericError("thermal beta must be positive");
  if (!h.is_hermitian()) throw NumericError("thermal state requires a Hermitian generator");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h.matrix());
  const Eigen::VectorXd& e = eig.eigenvalues();
  // Shift by the ground energy so the largest Boltzmann weight is exactly 1.
  Eigen::VectorXd w = (-beta * (e.array() - e.minCoeff())).exp();
  w /= w.sum();
  const Matrix& v = eig.eigenvectors();
  Matrix rho = v * w.cast<Complex>().asDiagonal() * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace();
  return DensityMatrix(std::move(rho));
}

double DensityMatrix::purity() const { return trace_inner(op_, op_).real(); }

Operator adjoint(const Operator& a) {
  Operator out(a.matrix().adjoint());
  if (a.hermitian_hint().value_or(false)) out = Operator::hermitian(out.matrix(), 1.0);
  return out;
}

Operator commutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "commutator");
  return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

Operator anticommutator(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "anticommutator");
  return Operator(a.matrix() * b.matrix() + b.matrix() * a.matrix());
}

Operator mat_exp(const Operator& a) {
  if (!all_finite(a.matrix())) throw NumericError("mat_exp: non-finite matrix entries");
  return Operator(a.matrix().exp());
}

Operator unitary_exp(const Operator& h, double s) {
  if (!all_finite(h.matrix()) || !std::isfinite(s)) {
    throw NumericError("unitary_exp: non-finite input");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h.matrix());
  const Eigen::VectorXd& e = eig.eigenvalues();
  Vector phases(e.size());
  for (Eigen::Index k = 0; k < e.size(); ++k) phases(k) = std::polar(1.0, -s * e(k));
  const Matrix& v = eig.eigenvectors();
  return Operator(v * phases.asDiagonal() * v.adjoint());
}

Complex trace_inner(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "trace_inner");
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  const Eigen::Index n = a.dim();
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    sum += x(i, i) * y(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      sum += x(i, j) * y(j, i) + x(j, i) * y(i, j);
    }
  }
  return sum;
}

Complex trace(const Operator& a) { return a.matrix().trace(); }

Complex expectation(const Operator& f, const DensityMatrix& rho) {
  return trace_inner(f, rho.as_operator());
}

double max_abs(const Operator& a) { return max_abs(a.matrix()); }

double frobenius(const Operator& a) { return a.matrix().norm(); }

double max_abs_diff(const Operator& a, const Operator& b) {
  require_same_dim(a, b, "max_abs_diff");
  return max_abs(Matrix(a.matrix() - b.matrix()));
}

double hermitian_defect(const Operator& a) {
  const double scale = max_abs(a.matrix());
  if (scale == 0.0) return 0.0;
  return max_abs(Matrix(a.matrix() - a.matrix().adjoint())) / scale;
}

double unitarity_defect(const Operator& u) {
  return max_abs(Matrix(u.matrix().adjoint() * u.matrix() - Matrix::Identity(u.dim(), u.dim())));
}

Operator conjugate(const Operator& u, const Operator& a) {
  require_same_dim(u, a, "conjugate");
  return Operator(u.matrix() * a.matrix() * u.matrix().adjoint());
}

Operator conjugate_adjoint(const Operator& u, const Operator& a) {
  require_same_dim(u, a, "conjugate_adjoint");
  return Operator(u.matrix().adjoint() * a.matrix() * u.matrix());
}

void require_same_dim(const Operator& a, const Operator& b, const char* where) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(where) + ": incompatible dimensions " +
                         std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

namespace pauli {

Operator x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return Operator::hermitian(std::move(m));
}

Operator y() {
  Matrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return Operator::hermitian(std::move(m));
}

Operator z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return Operator::hermitian(std::move(m));
}

}  // namespace pauli

}  // namespace bhp

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bhp/operator.hpp"
#include "bhp/oscillator.hpp"
#include "oracles.hpp"

using namespace bhp;

namespace {

Operator op(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return Operator(m);
}

}  // namespace

TEST_CASE("operator construction rejects non-square and empty matrices") {
  CHECK_THROWS_AS(Operator(Matrix(2, 3)), DimensionError);
  CHECK_THROWS_AS(Operator(Matrix(0, 0)), DimensionError);
  CHECK_THROWS_AS(Operator::hermitian(oracle::sx() * kI), NumericError);
  CHECK(Operator::hermitian(oracle::sy()).hermitian_hint() == std::optional<bool>(true));
  CHECK_THROWS(Units(0.0));
  CHECK_THROWS(Units(-1.0));
}

TEST_CASE("adjoint examples") {
  CHECK(adjoint(Operator::identity(3)).matrix() == Matrix::Identity(3, 3));
  CHECK(adjoint(pauli::y()).matrix() == pauli::y().matrix());
  const auto a = op({{0, 1}, {0, 0}});
  CHECK(adjoint(a).matrix() == op({{0, 0}, {1, 0}}).matrix());

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator r(oracle::random_hermitian(5, rng) + kI * oracle::random_hermitian(5, rng));
    CHECK(adjoint(adjoint(r)).matrix() == r.matrix());
  }
}

TEST_CASE("commutator examples") {
  CHECK(max_abs_diff(commutator(pauli::x(), pauli::y()), 2.0 * kI * pauli::z()) == 0.0);
  CHECK(max_abs(commutator(pauli::x(), pauli::x())) == 0.0);
  CHECK_THROWS_AS(commutator(pauli::x(), Operator::identity(3)), DimensionError);

  // Truncated ladder operators, brute-force products.
  const int n = 4;
  oracle::Matrix lower = oracle::Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) lower(k - 1, k) = std::sqrt(static_cast<double>(k));
  const oracle::Matrix x = (lower + lower.adjoint()) / std::sqrt(2.0);
  const oracle::Matrix p = kI * (lower.adjoint() - lower) / std::sqrt(2.0);
  const Operator c = commutator(Operator(x), Operator(p));
  oracle::Matrix expected = oracle::Matrix::Zero(n, n);
  expected.diagonal() << kI, kI, kI, -3.0 * kI;
  CHECK(max_abs_diff(c, Operator(expected)) < 1e-14);
}

TEST_CASE("anticommutator examples") {
  CHECK(max_abs(anticommutator(pauli::x(), pauli::y())) == 0.0);
  std::mt19937_64 rng(3);
  const Operator a(oracle::random_hermitian(3, rng));
  CHECK(max_abs_diff(anticommutator(Operator::identity(3), a), 2.0 * a) == 0.0);
  CHECK(max_abs_diff(anticommutator(pauli::z(), pauli::z()), 2.0 * Operator::identity(2)) == 0.0);
  CHECK_THROWS_AS(anticommutator(pauli::z(), Operator::identity(4)), DimensionError);
}

TEST_CASE("mat_exp examples") {
  CHECK(max_abs_diff(mat_exp(Operator::zero(3)), Operator::identity(3)) == 0.0);
  const Operator e = mat_exp(-kI * (std::numbers::pi / 2) * pauli::z());
  CHECK(max_abs_diff(e, op({{-kI, 0}, {0, kI}})) < 1e-15);
  CHECK(max_abs_diff(mat_exp(op({{0, 1}, {0, 0}})), op({{1, 1}, {0, 1}})) < 1e-15);

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = std::nan("");
  CHECK_THROWS_AS(mat_exp(Operator(bad)), NumericError);
  bad(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(mat_exp(Operator(bad)), NumericError);
}

TEST_CASE("mat_exp agrees with an independent Taylor evaluation up to norm 100") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> norm_target(0.01, 100.0);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 2 + trial % 6;
    oracle::Matrix a = oracle::random_hermitian(n, rng) + kI * oracle::random_hermitian(n, rng);
    a *= norm_target(rng) / a.norm();
    const oracle::Matrix ref = oracle::taylor_exp(a);
    const Operator got = mat_exp(Operator(a));
    CHECK((got.matrix() - ref).norm() <= 1e-12 * ref.norm() * 10.0);
  }
}

TEST_CASE("mat_exp of anti-Hermitian input is unitary and commutes with adjoint") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index n = 2 + trial % 7;
    const Operator h(oracle::random_hermitian(n, rng, 3.0));
    const Operator u = mat_exp(kI * h);
    CHECK(unitarity_defect(u) <= 1e-12);
    const Operator g(oracle::random_hermitian(n, rng) + kI * oracle::random_hermitian(n, rng));
    const Operator lhs = adjoint(mat_exp(g));
    CHECK(max_abs_diff(lhs, mat_exp(adjoint(g))) <= 1e-12 * max_abs(lhs));
  }
}

TEST_CASE("unitary_exp matches mat_exp") {
  std::mt19937_64 rng(5);
  const Operator h(oracle::random_hermitian(6, rng));
  CHECK(max_abs_diff(unitary_exp(Operator::hermitian(h.matrix()), 0.7), mat_exp(-0.7 * kI * h)) <
        1e-12);
}

TEST_CASE("trace_inner examples") {
  const auto half = DensityMatrix::maximally_mixed(2);
  CHECK(std::abs(trace_inner(pauli::z(), half.as_operator())) == 0.0);
  CHECK(trace_inner(pauli::z(), op({{1, 0}, {0, 0}})) == Complex(1.0, 0.0));
  CHECK_THROWS_AS(trace_inner(pauli::z(), Operator::identity(3)), DimensionError);
}

TEST_CASE("trace_inner is exactly symmetric") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator a(oracle::random_hermitian(5, rng) + kI * oracle::random_hermitian(5, rng));
    const Operator b(oracle::random_hermitian(5, rng));
    CHECK(trace_inner(a, b) == trace_inner(b, a));
    CHECK(std::abs(trace_inner(a, b) - (a.matrix() * b.matrix()).trace()) < 1e-12);
  }
}

TEST_CASE("commutator trace identities on random matrices") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 6;
    auto gen = [&] {
      return Operator(oracle::random_hermitian(n, rng) + kI * oracle::random_hermitian(n, rng));
    };
    const Operator a = gen(), b = gen(), c = gen();
    const double scale = frobenius(a) * frobenius(b) * frobenius(c);
    const Complex lhs = trace_inner(commutator(a, b), c);
    CHECK(std::abs(lhs - trace_inner(commutator(b, c), a)) <= 1e-12 * scale);
    CHECK(std::abs(lhs - trace_inner(a, commutator(b, c))) <= 1e-12 * scale);
    CHECK(std::abs(trace(commutator(a, b))) <= 1e-12 * frobenius(a) * frobenius(b));
  }
}

TEST_CASE("state vector and density matrix invariants") {
  Vector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(StateVector{v}, NumericError);
  const StateVector psi = StateVector::normalized(v);
  CHECK(std::abs(psi.amplitudes().norm() - 1.0) < 1e-15);
  CHECK_THROWS(StateVector::basis(2, 2));
  CHECK_THROWS(StateVector::normalized(Vector::Zero(2)));

  const auto rho = DensityMatrix::pure(psi);
  CHECK(std::abs(rho.purity() - 1.0) < 1e-14);
  CHECK(std::abs(DensityMatrix::maximally_mixed(4).purity() - 0.25) < 1e-15);

  Matrix not_unit_trace = Matrix::Identity(2, 2);
  CHECK_THROWS(DensityMatrix{not_unit_trace});
  Matrix negative(2, 2);
  negative << 1.5, 0, 0, -0.5;
  CHECK_THROWS(DensityMatrix{negative});
  Matrix non_hermitian(2, 2);
  non_hermitian << 0.5, 0.3, 0.1, 0.5;
  CHECK_THROWS(DensityMatrix{non_hermitian});
}

TEST_CASE("thermal state matches Boltzmann weights") {
  const Operator h = Operator::hermitian(0.5 * pauli::z().matrix());
  const double beta = 2.0;
  const auto rho = DensityMatrix::thermal(h, beta);
  const double z = std::exp(-beta * 0.5) + std::exp(beta * 0.5);
  CHECK(std::abs(rho.matrix()(0, 0) - std::exp(-beta * 0.5) / z) < 1e-14);
  CHECK(std::abs(rho.matrix()(1, 1) - std::exp(beta * 0.5) / z) < 1e-14);
  CHECK_THROWS(DensityMatrix::thermal(h, 0.0));
  // large beta stays finite thanks to the shifted exponent
  const auto cold = DensityMatrix::thermal(Operator::hermitian(500.0 * pauli::z().matrix()), 50.0);
  CHECK(std::abs(cold.matrix()(1, 1) - 1.0) < 1e-14);
}

TEST_CASE("arithmetic keeps or drops the hermitian hint") {
  const Operator x = pauli::x();
  CHECK((x * 2.0).hermitian_hint() == std::optional<bool>(true));
  CHECK_FALSE((x * kI).hermitian_hint().has_value());
  CHECK_FALSE((x + pauli::z()).hermitian_hint().has_value());
  CHECK((x * kI).is_hermitian() == false);
  CHECK((x + pauli::z()).is_hermitian());
}

TEST_CASE("hermitian_defect is relative to the largest entry") {
  Matrix m(2, 2);
  m << 1e6, 1.0, 1.0 + 1e-7, 0.0;
  CHECK(std::abs(hermitian_defect(Operator(m)) - 1e-13) < 1e-18);
  CHECK(hermitian_defect(Operator::zero(3)) == 0.0);
}

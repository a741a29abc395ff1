#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bhp/exact_evolution.hpp"
#include "oracles.hpp"

using namespace bhp;

namespace {

const Operator& h0_qubit() {
  static const Operator h = Operator::hermitian(0.5 * pauli::z().matrix());
  return h;
}

DrivenHamiltonian step_qubit(double lambda) {
  return DrivenHamiltonian(h0_qubit(), {{lambda, envelope::Step{}, pauli::x()}});
}

DrivenHamiltonian cos_qubit(double lambda, double w = 1.0) {
  return DrivenHamiltonian(h0_qubit(), {{lambda, envelope::Sinusoid{1.0, w, 0.0}, pauli::x()}});
}

oracle::HamiltonianFn as_fn(double lambda, double w = 1.0) {
  return [=](double t) -> oracle::Matrix {
    return 0.5 * oracle::sz() + lambda * std::cos(w * t) * oracle::sx();
  };
}

}  // namespace

TEST_CASE("undriven propagation reproduces the free propagator") {
  std::mt19937_64 rng(31);
  const DrivenHamiltonian h(Operator::hermitian(oracle::random_hermitian(5, rng)));
  const TimeGrid grid(3.0, 300);
  const auto table = propagate(h, grid);
  CHECK(table.at(0).matrix() == Matrix::Identity(5, 5));
  for (int j = 0; j <= grid.n_steps(); j += 17) {
    CHECK(max_abs_diff(table.at(j), free_propagator(h, grid.node(j))) <= 1e-10);
  }
}

TEST_CASE("step drive matches the closed-form rotation") {
  const double lambda = 0.1;
  const TimeGrid grid(2.0, 200);
  const auto table = propagate(step_qubit(lambda), grid);
  for (int j = 0; j <= grid.n_steps(); ++j) {
    const Operator ref(oracle::two_level_static_u(1.0, lambda, grid.node(j)));
    CHECK(max_abs_diff(table.at(j), ref) <= 1e-12);
  }
}

TEST_CASE("propagator stays unitary") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::Index n = 2 + trial;
    const DrivenHamiltonian h(
        Operator::hermitian(oracle::random_hermitian(n, rng)),
        {{0.3, envelope::Sinusoid{1.0, 2.0, 0.1}, Operator::hermitian(oracle::random_hermitian(n, rng))},
         {0.2, envelope::GaussianPulse{1.0, 0.8, 0.3}, Operator::hermitian(oracle::random_hermitian(n, rng))}});
    const auto table = propagate(h, TimeGrid(2.0, 400));
    CHECK(table.max_unitarity_defect() <= 1e-10);
  }
}

TEST_CASE("cosine drive converges at second order against an RK4 reference") {
  const double lambda = 0.3;
  const double t = 2.0;
  const oracle::Matrix ref = oracle::rk4_propagator(as_fn(lambda, 1.7), t, 20000);
  const auto h = cos_qubit(lambda, 1.7);
  const double e1 = max_abs_diff(propagate(h, TimeGrid(t, 100)).at(100), Operator(ref));
  const double e2 = max_abs_diff(propagate(h, TimeGrid(t, 200)).at(200), Operator(ref));
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.125));
  CHECK(PropagatorTable::scheme_order() == 2);
}

TEST_CASE("step halving against the 4x refined reference") {
  const auto h = cos_qubit(0.3, 1.7);
  auto error = [&](int steps) {
    const TimeGrid grid(2.0, steps);
    const auto coarse = propagate(h, grid);
    const auto fine = propagate(h, grid.refined(4));
    return max_abs_diff(coarse.at(steps), fine.at(4 * steps));
  };
  const double ratio = error(200) / error(400);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("reference_propagate samples the refined grid") {
  const auto h = cos_qubit(0.2);
  const TimeGrid grid(1.0, 50);
  const auto ref = reference_propagate(h, grid, 4);
  const auto fine = propagate(h, grid.refined(4));
  CHECK(ref.grid() == grid);
  for (int j = 0; j <= 50; ++j) CHECK(max_abs_diff(ref.at(j), fine.at(4 * j)) == 0.0);
}

TEST_CASE("resonant Rabi drive inverts the population") {
  const double lambda = 0.05;
  const double t = std::numbers::pi / lambda;
  const auto h = cos_qubit(lambda);
  const TimeGrid grid(t, 4000);
  const auto table = propagate(h, grid);
  const auto rho0 = DensityMatrix::pure(StateVector::basis(2, 0));
  const auto rho = evolve_density(rho0, table, grid.n_steps());
  const double excited = rho.matrix()(1, 1).real();
  CHECK(std::abs(excited - 1.0) <= 2.0 * lambda);

  const auto ref = reference_propagate(h, grid, 10);
  const double ref_excited = evolve_density(rho0, ref, grid.n_steps()).matrix()(1, 1).real();
  CHECK(std::abs(excited - ref_excited) <= 1e-3);

  for (int j = 0; j <= grid.n_steps(); j += 400) {
    CHECK(std::abs(evolve_density(rho0, table, j).purity() - 1.0) <= 1e-10);
  }
}

TEST_CASE("heisenberg_observable examples") {
  const auto h = cos_qubit(0.1);
  const TimeGrid grid(2.0, 200);
  const auto table = propagate(h, grid);
  CHECK(max_abs_diff(heisenberg_observable(pauli::z(), table, 0), pauli::z()) == 0.0);
  for (int j : {0, 50, 200}) {
    CHECK(max_abs_diff(heisenberg_observable(Operator::identity(2), table, j),
                       Operator::identity(2)) <= 1e-14);
  }
  CHECK_THROWS_AS(heisenberg_observable(Operator::identity(3), table, 1), DimensionError);

  const double w = 1.4;
  const DrivenHamiltonian free(Operator::hermitian(0.5 * w * pauli::z().matrix()));
  const auto ftable = propagate(free, grid);
  for (int j = 0; j <= 200; j += 25) {
    const double t = grid.node(j);
    const oracle::Matrix expected = std::cos(w * t) * oracle::sx() - std::sin(w * t) * oracle::sy();
    CHECK(max_abs_diff(heisenberg_observable(pauli::x(), ftable, j), Operator(expected)) <= 1e-12);
  }
}

TEST_CASE("backward_observable examples") {
  const auto h = cos_qubit(0.1);
  const TimeGrid grid(2.0, 200);
  const auto table = propagate(h, grid);
  for (int t = 0; t <= 200; t += 40) {
    CHECK(max_abs_diff(backward_observable(pauli::z(), table, t, t), pauli::z()) <= 1e-10);
    CHECK(max_abs_diff(backward_observable(pauli::z(), table, t, 0),
                       heisenberg_observable(pauli::z(), table, t)) == 0.0);
  }
  CHECK_THROWS_AS(backward_observable(pauli::z(), table, 10, 11), DimensionError);

  const auto static_table = propagate(step_qubit(0.0), grid);
  for (int t = 0; t <= 200; t += 20) {
    for (int tp = 0; tp <= t; tp += 10) {
      CHECK(max_abs_diff(backward_observable(pauli::x(), static_table, t, tp),
                         heisenberg_observable(pauli::x(), static_table, t - tp)) <= 1e-10);
    }
  }
}

TEST_CASE("backward profile values are Hermitian and end at F") {
  std::mt19937_64 rng(41);
  const DrivenHamiltonian h(Operator::hermitian(oracle::random_hermitian(4, rng)),
                            {{0.4, envelope::Sinusoid{1.0, 2.0, 0.0},
                              Operator::hermitian(oracle::random_hermitian(4, rng))}});
  const Operator f = Operator::hermitian(oracle::random_hermitian(4, rng));
  const auto table = propagate(h, TimeGrid(1.5, 150));
  const auto profile = backward_profile(f, table, 120);
  CHECK(profile.values.size() == 121);
  CHECK(max_abs_diff(profile.values.back(), f) <= 1e-10 * max_abs(f));
  for (const auto& v : profile.values) CHECK(hermitian_defect(v) <= 1e-10);
}

TEST_CASE("evolve_density examples") {
  const auto table = propagate(cos_qubit(0.2), TimeGrid(2.0, 100));
  const auto rho0 = DensityMatrix::pure(StateVector::normalized(Vector::Ones(2)));
  CHECK(max_abs_diff(evolve_density(rho0, table, 0).as_operator(), rho0.as_operator()) == 0.0);
  const auto mixed = DensityMatrix::maximally_mixed(2);
  for (int j = 0; j <= 100; j += 10) {
    CHECK(max_abs_diff(evolve_density(mixed, table, j).as_operator(), mixed.as_operator()) <= 1e-14);
  }
  CHECK_THROWS_AS(evolve_density(DensityMatrix::maximally_mixed(3), table, 1), DimensionError);

  std::mt19937_64 rng(3);
  const DensityMatrix r(oracle::random_density(2, rng));
  const auto rt = evolve_density(r, table, 100);
  CHECK(std::abs(trace(rt.as_operator()) - 1.0) <= 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> e0(r.matrix()), e1(rt.matrix());
  CHECK((e0.eigenvalues() - e1.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("conservation profile") {
  const TimeGrid grid(2.0, 400);
  const auto rho0 = DensityMatrix::pure(StateVector::basis(2, 0));
  const auto table = propagate(step_qubit(0.1), grid);
  CHECK(conservation_profile(pauli::z(), rho0, table, 400) <= 1e-10);
  CHECK(conservation_profile(Operator::identity(2), rho0, table, 400) <= 1e-12);

  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 5; ++trial) {
    const DrivenHamiltonian h(Operator::hermitian(oracle::random_hermitian(3, rng)),
                              {{0.5, envelope::Sinusoid{1.0, 1.0, 0.3},
                                Operator::hermitian(oracle::random_hermitian(3, rng))}});
    const auto t = propagate(h, TimeGrid(1.0, 100));
    const DensityMatrix r(oracle::random_density(3, rng));
    const Operator f = Operator::hermitian(oracle::random_hermitian(3, rng));
    CHECK(conservation_profile(f, r, t, 73) <= 1e-8);
  }
}

TEST_CASE("expectation three ways") {
  const TimeGrid grid(2.0, 200);
  const auto table = propagate(cos_qubit(0.1), grid);
  std::mt19937_64 rng(9);
  const DensityMatrix rho0(oracle::random_density(2, rng));
  const auto at0 = expectation_three_ways(pauli::z(), rho0, table, 0);
  const Complex direct = trace_inner(pauli::z(), rho0.as_operator());
  CHECK(std::abs(at0.schrodinger - direct) <= 1e-14);
  CHECK(std::abs(at0.heisenberg - direct) <= 1e-14);
  CHECK(std::abs(at0.backward - direct) <= 1e-14);

  const auto id = expectation_three_ways(Operator::identity(2), rho0, table, 200);
  CHECK(std::abs(id.schrodinger - 1.0) <= 1e-12);
  CHECK(std::abs(id.heisenberg - 1.0) <= 1e-12);
  CHECK(std::abs(id.backward - 1.0) <= 1e-12);

  CHECK(expectation_three_ways(pauli::z(), rho0, table, 200).max_pairwise_defect() <= 1e-10);
}

TEST_CASE("backward equation of motion residual is second order") {
  const auto h = cos_qubit(0.1);
  auto residual = [&](int steps) {
    const auto table = propagate(h, TimeGrid(2.0, steps));
    return backward_eom_residual(pauli::z(), table, steps);
  };
  const double ratio = residual(1000) / residual(2000);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.125));

  auto hres = [&](int steps) {
    return heisenberg_eom_residual(pauli::z(), propagate(h, TimeGrid(2.0, steps)));
  };
  CHECK(hres(1000) / hres(2000) == doctest::Approx(4.0).epsilon(0.125));
}

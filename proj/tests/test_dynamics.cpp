#include <doctest.h>

#include <cmath>
#include <numbers>

#include <kahlerq/dynamics.hpp>
#include <kahlerq/errors.hpp>
#include <kahlerq/oracle.hpp>
#include <kahlerq/rng.hpp>
#include <kahlerq/sampling.hpp>

using namespace kahlerq;

namespace {

ComplexOperator pauli_x() {
  return {(Mat(2, 2) << 0, 1, 1, 0).finished(), Mat::Zero(2, 2)};
}
ComplexOperator pauli_z() {
  return {(Mat(2, 2) << 1, 0, 0, -1).finished(), Mat::Zero(2, 2)};
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("splitting separates the symmetric and antisymmetric parts") {
  const HamiltonianSplit hz = split_hamiltonian(pauli_z());
  CHECK(max_abs(Mat(hz.k_sym - pauli_z().x)) == 0.0);
  CHECK(max_abs(hz.l_skew) == 0.0);

  const ComplexOperator y{Mat::Zero(2, 2), (Mat(2, 2) << 0, -1, 1, 0).finished()};
  const HamiltonianSplit hy = split_hamiltonian(y);
  CHECK(max_abs(hy.k_sym) == 0.0);
  CHECK(max_abs(Mat(hy.l_skew - y.y)) == 0.0);
  CHECK(hy.sym_residual < 1e-15);
  CHECK(hy.skew_residual < 1e-15);

  Rng rng(2);
  CHECK_THROWS_AS(split_hamiltonian(from_complex(random_cmat(rng, 3))), NotHermitian);
}

TEST_CASE("canonical equations, written out for a diagonal generator") {
  const HamiltonianSplit hs = split_hamiltonian(pauli_z());
  const KahlerState u{(Vec(2) << 1, 0).finished(), Vec::Zero(2)};
  const PhaseVelocity vel = vector_field(hs, u);
  CHECK(max_abs(vel.dq) == 0.0);           // dq = K p = 0
  CHECK(vel.dp(0) == doctest::Approx(-1.0));  // dp = -K q
  CHECK(vel.dp(1) == doctest::Approx(0.0));
}

TEST_CASE("quadratic Hamiltonian values on coordinate states") {
  const HamiltonianSplit hs = split_hamiltonian(pauli_z());
  const KahlerState up{(Vec(2) << 1, 0).finished(), Vec::Zero(2)};
  const KahlerState down{(Vec(2) << 0, 1).finished(), Vec::Zero(2)};
  CHECK(hsym_value(hs, up) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(hsym_value(hs, down) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("classical energy is half the real part of the quantum expectation") {
  Rng rng(19);
  for (int k = 0; k < 25; ++k) {
    const ComplexOperator h = from_complex(random_hermitian(rng, 6));
    const HamiltonianSplit hs = split_hamiltonian(h);
    const KahlerState u = random_state(rng, 6, false);
    const CVec psi = complexify(u);
    const double quantum = 0.5 * oracle::hermitian_inner(psi, CVec(h.to_complex() * psi)).real();
    CHECK(std::abs(hsym_value(hs, u) - quantum) < 1e-13);
  }
}

TEST_CASE("the lifted generator reproduces the vector field and is antisymmetric") {
  Rng rng(43);
  const ComplexOperator h = from_complex(random_hermitian(rng, 5));
  const HamiltonianSplit hs = split_hamiltonian(h);
  const Mat m = lifted_generator(hs);
  CHECK(max_abs(Mat(m + m.transpose())) < 1e-15);

  const KahlerState u = random_state(rng, 5, false);
  const PhaseVelocity vel = vector_field(hs, u);
  const Vec mu = m * u.stacked();
  CHECK(max_abs(Vec(mu.head(5) - vel.dq)) < 1e-15);
  CHECK(max_abs(Vec(mu.tail(5) - vel.dp)) < 1e-15);
}

TEST_CASE("quarter-period flip under an off-diagonal generator") {
  // exp(-i sigma_x pi/2) (1, 0) = -i (0, 1): q -> 0, p -> (0, -1).
  const KahlerState u0{(Vec(2) << 1, 0).finished(), Vec::Zero(2)};
  const KahlerState ut = evolve_exact(pauli_x(), u0, std::numbers::pi / 2);
  CHECK(max_abs(ut.q) < 1e-15);
  CHECK(ut.p(0) == doctest::Approx(0.0));
  CHECK(ut.p(1) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("real evolution matches the complex propagator on random draws") {
  Rng rng(53);
  for (int k = 0; k < 30; ++k) {
    const Index n = 2 + 2 * (k % 4);
    const CMat h = random_hermitian(rng, n);
    const KahlerState u0 = random_state(rng, n);
    const double t = rng.uniform(0.0, 10.0);

    const KahlerState real_route = evolve_exact(from_complex(h), u0, t);
    const CVec oracle_route = oracle::propagator(h, t) * complexify(u0);
    CHECK(max_abs(Vec((real_route - decomplexify(oracle_route)).stacked())) < 1e-12);
  }
}

TEST_CASE("exact propagators are K-unitary") {
  Rng rng(61);
  const ComplexOperator h = from_complex(random_hermitian(rng, 4));
  const KahlerOperator s = exact_propagator(h, 1.7);
  CHECK(is_k_unitary(s, 1e-12));
}

TEST_CASE("midpoint one-step map is exactly symplectic and orthogonal") {
  Rng rng(71);
  const HamiltonianSplit hs = split_hamiltonian(from_complex(random_hermitian(rng, 6)));
  const KahlerOperator s{midpoint_step_map(hs, 0.01)};
  CHECK(symplectic_defect(s) < 1e-14);
  CHECK(orthogonality_defect(s) < 1e-14);
}

TEST_CASE("midpoint trajectory: layout, conservation, second-order accuracy") {
  Rng rng(83);
  const ComplexOperator h = from_complex(random_hermitian(rng, 4));
  const HamiltonianSplit hs = split_hamiltonian(h);
  const KahlerState u0 = random_state(rng, 4);

  const Trajectory traj = evolve_midpoint(hs, u0, 10.0, 1000, 100);
  REQUIRE(traj.times.size() == traj.states.size());
  CHECK(traj.times.size() == 11);
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(traj.step == doctest::Approx(0.01).epsilon(1e-15));

  const ConservationReport cons = conservation_report(hs, traj);
  CHECK(cons.hsym_drift < 1e-11);
  CHECK(cons.gnorm_drift < 1e-12);
  CHECK(cons.omega_defect < 1e-12);

  // Endpoint error vs the exact flow drops by ~4 when the step halves.
  const KahlerState exact = evolve_exact(h, u0, 10.0);
  const auto endpoint_error = [&](int steps) {
    const Trajectory t = evolve_midpoint(hs, u0, 10.0, steps, steps);
    return g_norm(t.states.back() - exact);
  };
  const double ratio = endpoint_error(1000) / endpoint_error(2000);
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);
}

TEST_CASE("exact-stepping trajectory agrees with single-shot evolution") {
  Rng rng(97);
  const ComplexOperator h = from_complex(random_hermitian(rng, 3));
  const KahlerState u0 = random_state(rng, 3);
  const Trajectory traj = evolve_exact_trajectory(h, u0, 5.0, 50, 10);
  const KahlerState direct = evolve_exact(h, u0, 5.0);
  CHECK(max_abs(Vec((traj.states.back() - direct).stacked())) < 1e-12);
  CHECK(traj.scheme == Scheme::ExactExponential);
}

TEST_CASE("an unreachable solve tolerance trips the residual guard") {
  Rng rng(101);
  const HamiltonianSplit hs = split_hamiltonian(from_complex(random_hermitian(rng, 6)));
  const KahlerState u0 = random_state(rng, 6);
  CHECK_THROWS_AS(evolve_midpoint(hs, u0, 1.0, 100, 1, 1e-300), SolverFailure);
}

}  // TEST_SUITE

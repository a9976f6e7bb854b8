#include "kahlerq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kahlerq/errors.hpp"
#include "kahlerq/oracle.hpp"
#include "kahlerq/rng.hpp"
#include "kahlerq/sampling.hpp"

namespace kahlerq {

CMat HamiltonianSplit::to_complex() const {
  return k_sym.cast<std::complex<double>>() + kImag * l_skew.cast<std::complex<double>>();
}

HamiltonianSplit split_hamiltonian(const ComplexOperator& h, double tol) {
  const double rx = max_abs(Mat(h.x - h.x.transpose()));
  const double ry = max_abs(Mat(h.y + h.y.transpose()));
  if (std::max(rx, ry) > tol) {
    throw NotHermitian("split_hamiltonian: X symmetry residual " + std::to_string(rx) +
                       ", Y skew residual " + std::to_string(ry));
  }
  HamiltonianSplit hs;
  hs.k_sym = 0.5 * (h.x + h.x.transpose());
  hs.l_skew = 0.5 * (h.y - h.y.transpose());
  hs.sym_residual = rx;
  hs.skew_residual = ry;
  return hs;
}

PhaseVelocity vector_field(const HamiltonianSplit& hs, const KahlerState& u) {
  if (u.dim() != hs.dim()) {
    throw DimensionMismatch("vector_field: H is N=" + std::to_string(hs.dim()) + ", state N=" +
                            std::to_string(u.dim()));
  }
  return {hs.k_sym * u.p + hs.l_skew * u.q, -(hs.k_sym * u.q) + hs.l_skew * u.p};
}

double hsym_value(const HamiltonianSplit& hs, const KahlerState& u) {
  if (u.dim() != hs.dim()) {
    throw DimensionMismatch("hsym_value: H is N=" + std::to_string(hs.dim()) + ", state N=" +
                            std::to_string(u.dim()));
  }
  return 0.5 * (u.p.dot(hs.k_sym * u.p) + u.q.dot(hs.k_sym * u.q)) + u.p.dot(hs.l_skew * u.q);
}

Mat lifted_generator(const HamiltonianSplit& hs) {
  const Index n = hs.dim();
  Mat m(2 * n, 2 * n);
  m.block(0, 0, n, n) = hs.l_skew;
  m.block(0, n, n, n) = hs.k_sym;
  m.block(n, 0, n, n) = -hs.k_sym;
  m.block(n, n, n, n) = hs.l_skew;
  return m;
}

KahlerOperator exact_propagator(const ComplexOperator& h, double t, double herm_tol) {
  return gamma_lift(from_complex(oracle::propagator(h.to_complex(), t, herm_tol)));
}

KahlerState evolve_exact(const ComplexOperator& h, const KahlerState& u0, double t,
                         double herm_tol) {
  return exact_propagator(h, t, herm_tol).apply(u0);
}

Mat midpoint_step_map(const HamiltonianSplit& hs, double h) {
  const Mat m = lifted_generator(hs);
  const Index d = m.rows();
  const Mat a_minus = Mat::Identity(d, d) - (0.5 * h) * m;
  const Mat a_plus = Mat::Identity(d, d) + (0.5 * h) * m;
  return Eigen::PartialPivLU<Mat>(a_minus).solve(a_plus);
}

namespace {

void check_trajectory_args(Index state_dim, Index h_dim, double t_final, int steps,
                           int store_every) {
  if (state_dim != h_dim) {
    throw DimensionMismatch("evolve: H is N=" + std::to_string(h_dim) + ", state N=" +
                            std::to_string(state_dim));
  }
  if (!(t_final > 0.0)) throw KahlerError("evolve: t_final must be > 0");
  if (steps < 1) throw KahlerError("evolve: steps must be >= 1");
  if (store_every < 1) throw KahlerError("evolve: store_every must be >= 1");
}

}  // namespace

Trajectory evolve_midpoint(const HamiltonianSplit& hs, const KahlerState& u0, double t_final,
                           int steps, int store_every, double solve_tol) {
  check_trajectory_args(u0.dim(), hs.dim(), t_final, steps, store_every);
  const double h = t_final / steps;
  const Mat m = lifted_generator(hs);
  const Index d = m.rows();
  const Mat a_minus = Mat::Identity(d, d) - (0.5 * h) * m;
  const Mat a_plus = Mat::Identity(d, d) + (0.5 * h) * m;
  const Eigen::PartialPivLU<Mat> lu(a_minus);

  Trajectory traj;
  traj.scheme = Scheme::ImplicitMidpoint;
  traj.step = h;
  traj.times.push_back(0.0);
  traj.states.push_back(u0);

  Vec u = u0.stacked();
  for (int n = 1; n <= steps; ++n) {
    const Vec rhs = a_plus * u;
    const Vec next = lu.solve(rhs);
    const double residual = max_abs(Vec(a_minus * next - rhs));
    const double scale = std::max(1.0, max_abs(rhs));
    if (residual > solve_tol * scale) {
      throw SolverFailure("evolve_midpoint: step " + std::to_string(n) + " solve residual " +
                          std::to_string(residual));
    }
    u = next;
    if (n % store_every == 0 || n == steps) {
      traj.times.push_back(n * h);
      traj.states.push_back(KahlerState::from_stacked(u));
    }
  }
  return traj;
}

Trajectory evolve_exact_trajectory(const ComplexOperator& h, const KahlerState& u0,
                                   double t_final, int steps, int store_every) {
  check_trajectory_args(u0.dim(), h.dim(), t_final, steps, store_every);
  const double dt = t_final / steps;
  const KahlerOperator s = exact_propagator(h, dt);

  Trajectory traj;
  traj.scheme = Scheme::ExactExponential;
  traj.step = dt;
  traj.times.push_back(0.0);
  traj.states.push_back(u0);

  KahlerState u = u0;
  for (int n = 1; n <= steps; ++n) {
    u = s.apply(u);
    if (n % store_every == 0 || n == steps) {
      traj.times.push_back(n * dt);
      traj.states.push_back(u);
    }
  }
  return traj;
}

ConservationReport conservation_report(const HamiltonianSplit& hs, const Trajectory& traj,
                                       std::uint64_t seed, int sample_pairs) {
  ConservationReport report;
  if (traj.states.size() <= 1) return report;

  const double h0 = hsym_value(hs, traj.states.front());
  const double n0 = g_norm(traj.states.front());
  for (const KahlerState& u : traj.states) {
    report.hsym_drift = std::max(report.hsym_drift, std::abs(hsym_value(hs, u) - h0));
    report.gnorm_drift = std::max(report.gnorm_drift, std::abs(g_norm(u) - n0));
  }

  // Symplectic-form defect of the trajectory's own one-step map on random pairs.
  const Mat s = (traj.scheme == Scheme::ImplicitMidpoint)
                    ? midpoint_step_map(hs, traj.step)
                    : exact_propagator(from_complex(hs.to_complex()), traj.step).block;
  const KahlerOperator step_op{s};
  Rng rng(seed);
  const Index n = hs.dim();
  for (int k = 0; k < sample_pairs; ++k) {
    const KahlerState u = random_state(rng, n, /*normalize=*/false);
    const KahlerState v = random_state(rng, n, /*normalize=*/false);
    const double defect =
        std::abs(symplectic_omega(step_op.apply(u), step_op.apply(v)) - symplectic_omega(u, v));
    report.omega_defect = std::max(report.omega_defect, defect);
  }
  return report;
}

}  // namespace kahlerq

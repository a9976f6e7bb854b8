#pragma once

#include <cstdint>
#include <vector>

#include "kahlerq/operators.hpp"
#include "kahlerq/state.hpp"
#include "kahlerq/types.hpp"

namespace kahlerq {

// H = K + iL with K symmetric and L skew-symmetric; the decomposition every
// Hermitian operator admits, and the one the classical equations are written
// in.  Units of both parts: angular frequency (hbar = 1 in this module).
struct HamiltonianSplit {
  Mat k_sym;
  Mat l_skew;
  double sym_residual = 0.0;   // ||X - X^T|| of the input, before symmetrizing
  double skew_residual = 0.0;  // ||Y + Y^T|| of the input, before antisymmetrizing

  Index dim() const { return k_sym.rows(); }
  CMat to_complex() const;  // K + i L
};

// Throws NotHermitian when the symmetric/skew residuals of h exceed tol.
HamiltonianSplit split_hamiltonian(const ComplexOperator& h, double tol = 1e-10);

// Right-hand side of the canonical equations:
//   dq = K p + L q,   dp = -K q + L p,
// which is exactly Gamma(-iH) applied to (q; p).
struct PhaseVelocity {
  Vec dq;
  Vec dp;
};
PhaseVelocity vector_field(const HamiltonianSplit& hs, const KahlerState& u);

// The quadratic Hamiltonian function 1/2 (p.Kp + q.Kq) + p.Lq, numerically
// equal to 1/2 Re<psi, H psi>.
double hsym_value(const HamiltonianSplit& hs, const KahlerState& u);

// M = Gamma(-iH) = [[L, K], [-K, L]], the generator of the lifted flow.
Mat lifted_generator(const HamiltonianSplit& hs);

// Gamma(exp(-iHt)) via the Hermitian eigendecomposition on the complex side.
// Throws NotHermitian.
KahlerOperator exact_propagator(const ComplexOperator& h, double t, double herm_tol = 1e-10);
KahlerState evolve_exact(const ComplexOperator& h, const KahlerState& u0, double t,
                         double herm_tol = 1e-10);

enum class Scheme { ExactExponential, ImplicitMidpoint };

struct Trajectory {
  std::vector<double> times;        // strictly increasing, starts at 0
  std::vector<KahlerState> states;  // same length as times
  Scheme scheme = Scheme::ExactExponential;
  double step = 0.0;  // integrator step size (may be finer than the stored stride)
};

// Cayley one-step map S = (I - (h/2)M)^{-1} (I + (h/2)M).  For M commuting
// with J and skew-symmetric, S is exactly symplectic and orthogonal.
Mat midpoint_step_map(const HamiltonianSplit& hs, double h);

// Implicit midpoint integration to t_final in `steps` equal steps, storing
// every `store_every`-th state (endpoint always stored).  Each step solves
// (I - (h/2)M) u' = (I + (h/2)M) u with a reused LU factorization; throws
// SolverFailure when a solve's relative residual exceeds solve_tol.
Trajectory evolve_midpoint(const HamiltonianSplit& hs, const KahlerState& u0, double t_final,
                           int steps, int store_every = 1, double solve_tol = 1e-10);

// Same sampling layout but stepping with the exact lifted propagator.
Trajectory evolve_exact_trajectory(const ComplexOperator& h, const KahlerState& u0,
                                   double t_final, int steps, int store_every = 1);

// Drift diagnostics over a stored trajectory plus a symplectic-form defect of
// the trajectory's one-step map measured on random vector pairs.
struct ConservationReport {
  double hsym_drift = 0.0;   // max_t |H_sym(u_t) - H_sym(u_0)|
  double gnorm_drift = 0.0;  // max_t | |u_t| - |u_0| |
  double omega_defect = 0.0; // max over pairs of |omega(Su, Sv) - omega(u, v)|
};
ConservationReport conservation_report(const HamiltonianSplit& hs, const Trajectory& traj,
                                       std::uint64_t seed = 0x636f6e7372767e01ull,
                                       int sample_pairs = 20);

}  // namespace kahlerq

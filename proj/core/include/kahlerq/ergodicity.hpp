#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "kahlerq/dynamics.hpp"
#include "kahlerq/operators.hpp"
#include "kahlerq/state.hpp"
#include "kahlerq/types.hpp"

namespace kahlerq {

inline constexpr std::uint64_t kDefaultBudget = 20'000'000ull;

// Normal-mode coordinates of a quadratic Hamiltonian: eigenfrequencies in
// ascending order plus the K-unitary change of frame (q;p) -> (q~;p~) in which
// H_sym = 1/2 sum_a lambda_a (q~_a^2 + p~_a^2).
struct NormalModeFrame {
  Vec lambdas;
  KahlerOperator transform;  // lift of U^dagger, U = eigenvector matrix
  bool degenerate = false;   // repeated eigenvalues: frame choice non-unique
};

// Throws NotHermitian.  Degeneracy is flagged, never an error.
NormalModeFrame normal_modes(const ComplexOperator& h, double herm_tol = 1e-10,
                             double degeneracy_tol = 1e-9);

// Per-mode circle coordinates: action F_a = q~_a^2 + p~_a^2 and angle
// theta_a = atan2(p~_a, q~_a) in [0, 2pi).  Angles on (numerically) zero
// circles are meaningless; those modes are flagged instead of erroring.
struct ActionAngle {
  Vec actions;
  Vec angles;
  std::vector<bool> angle_defined;  // false when F_a < 1e-14
};
ActionAngle to_action_angle(const NormalModeFrame& frame, const KahlerState& u);

using IntVec = Eigen::VectorXi;

struct IndependenceVerdict {
  bool independent = true;
  std::optional<IntVec> relation;  // nonzero k with |k . lambda| < tol, when dependent
  int bound = 0;
  double tol = 0.0;
  double min_combo = 0.0;  // smallest |k . lambda| seen over the whole scan
};

// Exhaustive scan over nonzero integer vectors with |k_a| <= bound, one
// representative per {k, -k} pair (first nonzero entry positive), visited in
// lexicographic order.  Throws SearchSpaceTooLarge when (2*bound+1)^N exceeds
// the budget.
IndependenceVerdict check_rational_independence(const Vec& lambdas, int bound, double tol,
                                                std::uint64_t budget = kDefaultBudget);

// Polynomial observable in the normal-mode coordinates: a sum of terms
//   coeff * prod_a q~_a^{q_exp[a]} * p~_a^{p_exp[a]},
// restricted form chosen so the torus average also has a closed form.
struct Observable {
  struct Term {
    double coeff = 0.0;
    std::vector<int> q_exp;
    std::vector<int> p_exp;
  };
  std::vector<Term> terms;

  double operator()(const KahlerState& mode_state) const;

  // Exact uniform-measure average over the torus at the given actions:
  // each mode contributes (e_q-1)!!(e_p-1)!!/(e_q+e_p)!! * F^{(e_q+e_p)/2},
  // zero when any exponent is odd.
  double analytic_torus_average(const Vec& actions) const;
};

using ObservableFn = std::function<double(const KahlerState&)>;

// Trapezoidal Birkhoff average of f along the exact flow of hs, sampled at
// steps+1 equispaced times in [0, t_final].  When `running` is non-null it
// receives up to `checkpoints` partial averages (T_k, avg over [0, T_k]).
double time_average(const HamiltonianSplit& hs, const KahlerState& u0, const ObservableFn& f,
                    double t_final, int steps,
                    std::vector<std::pair<double, double>>* running = nullptr,
                    int checkpoints = 100);

// Uniform tensor-grid quadrature of f over theta in [0,2pi)^N at fixed
// actions (exact for trigonometric polynomials of degree < grid).  The
// reduction tree is fixed by the index range alone, so results are
// bit-identical for any thread count.  Throws SearchSpaceTooLarge when
// grid^N exceeds the budget.
double torus_average(const ObservableFn& f, const Vec& actions, int grid,
                     std::uint64_t budget = kDefaultBudget, int threads = 1);

struct ErgodicityOptions {
  double t_final = 1e4;
  int steps = 200'000;
  int torus_grid = 64;
  int bound = 50;
  double independence_tol = 1e-9;
  double gap_tol = 1e-2;
  std::uint64_t budget = kDefaultBudget;
  int threads = 1;
  int checkpoints = 100;
};

struct ErgodicityReport {
  Vec lambdas;
  IndependenceVerdict verdict;
  ActionAngle initial;
  double time_avg = 0.0;
  double torus_avg = 0.0;
  double gap = 0.0;    // |time_avg - torus_avg|
  bool ergodic = false;  // gap <= gap_tol
  std::vector<std::pair<double, double>> running;  // (T, partial time average)
};

// Full theorem check: diagonalize, test independence of the frequencies, run
// the Birkhoff average in mode coordinates, compare with the torus average at
// the trajectory's own actions.  The observable acts on mode coordinates.
ErgodicityReport ergodicity_experiment(const ComplexOperator& h, const KahlerState& u0,
                                       const ObservableFn& f,
                                       const ErgodicityOptions& opt = {});

}  // namespace kahlerq

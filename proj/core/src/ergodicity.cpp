#include "kahlerq/ergodicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kahlerq/errors.hpp"
#include "kahlerq/oracle.hpp"
#include "kahlerq/parallel.hpp"

namespace kahlerq {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

NormalModeFrame normal_modes(const ComplexOperator& h, double herm_tol, double degeneracy_tol) {
  const CMat hm = h.to_complex();
  const double defect = oracle::hermitian_residual(hm);
  if (defect > herm_tol) {
    throw NotHermitian("normal_modes: Hermitian defect " + std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(hm);
  if (es.info() != Eigen::Success) throw SolverFailure("normal_modes: eigensolver failed");

  NormalModeFrame frame;
  frame.lambdas = es.eigenvalues();  // ascending
  frame.transform = gamma_lift(from_complex(CMat(es.eigenvectors().adjoint())));
  const double scale = std::max(1.0, max_abs(frame.lambdas));
  for (Index a = 0; a + 1 < frame.lambdas.size(); ++a) {
    if (frame.lambdas(a + 1) - frame.lambdas(a) < degeneracy_tol * scale) {
      frame.degenerate = true;
      break;
    }
  }
  return frame;
}

ActionAngle to_action_angle(const NormalModeFrame& frame, const KahlerState& u) {
  const KahlerState mode = frame.transform.apply(u);
  const Index n = mode.dim();
  ActionAngle aa;
  aa.actions.resize(n);
  aa.angles.resize(n);
  aa.angle_defined.assign(static_cast<std::size_t>(n), true);
  for (Index a = 0; a < n; ++a) {
    aa.actions(a) = mode.q(a) * mode.q(a) + mode.p(a) * mode.p(a);
    double theta = std::atan2(mode.p(a), mode.q(a));
    if (theta < 0.0) theta += kTwoPi;
    aa.angles(a) = theta;
    if (aa.actions(a) < 1e-14) {
      aa.angle_defined[static_cast<std::size_t>(a)] = false;
      aa.angles(a) = 0.0;
    }
  }
  return aa;
}

namespace {

// Lexicographic scan over canonical representatives (first nonzero entry
// positive).  Returns true when a relation below tol was found.
bool scan_relations(const Vec& lambdas, int bound, double tol, Index pos, bool nonzero_seen,
                    double partial, IntVec& k, double& min_combo, IntVec& relation) {
  if (pos == lambdas.size()) {
    if (!nonzero_seen) return false;
    const double combo = std::abs(partial);
    min_combo = std::min(min_combo, combo);
    if (combo < tol) {
      relation = k;
      return true;
    }
    return false;
  }
  const int lo = nonzero_seen ? -bound : 0;  // canonical: leading entries start at 0
  for (int v = lo; v <= bound; ++v) {
    k(pos) = v;
    if (scan_relations(lambdas, bound, tol, pos + 1, nonzero_seen || v != 0,
                       partial + v * lambdas(pos), k, min_combo, relation)) {
      return true;
    }
  }
  k(pos) = 0;
  return false;
}

}  // namespace

IndependenceVerdict check_rational_independence(const Vec& lambdas, int bound, double tol,
                                                std::uint64_t budget) {
  if (lambdas.size() < 1) throw DimensionMismatch("check_rational_independence: empty spectrum");
  if (bound < 1) throw KahlerError("check_rational_independence: bound must be >= 1");
  if (!(tol > 0.0)) throw KahlerError("check_rational_independence: tol must be > 0");

  const Index n = lambdas.size();
  long double space = 1.0L;
  for (Index a = 0; a < n; ++a) space *= static_cast<long double>(2 * bound + 1);
  if (space > static_cast<long double>(budget)) {
    throw SearchSpaceTooLarge("check_rational_independence: (2*" + std::to_string(bound) +
                              "+1)^" + std::to_string(n) + " exceeds budget " +
                              std::to_string(budget));
  }

  IndependenceVerdict verdict;
  verdict.bound = bound;
  verdict.tol = tol;
  verdict.min_combo = std::numeric_limits<double>::infinity();

  IntVec k = IntVec::Zero(n);
  IntVec relation;
  if (scan_relations(lambdas, bound, tol, 0, false, 0.0, k, verdict.min_combo, relation)) {
    verdict.independent = false;
    verdict.relation = relation;
  }
  return verdict;
}

double Observable::operator()(const KahlerState& mode_state) const {
  double total = 0.0;
  for (const Term& term : terms) {
    double value = term.coeff;
    for (std::size_t a = 0; a < term.q_exp.size(); ++a) {
      const Index i = static_cast<Index>(a);
      for (int e = 0; e < term.q_exp[a]; ++e) value *= mode_state.q(i);
    }
    for (std::size_t a = 0; a < term.p_exp.size(); ++a) {
      const Index i = static_cast<Index>(a);
      for (int e = 0; e < term.p_exp[a]; ++e) value *= mode_state.p(i);
    }
    total += value;
  }
  return total;
}

namespace {

double double_factorial(int n) {  // (-1)!! = 0!! = 1
  double out = 1.0;
  for (int k = n; k >= 2; k -= 2) out *= k;
  return out;
}

// Average of cos^a(t) sin^b(t) over one period: zero for odd a or b, else
// (a-1)!!(b-1)!!/(a+b)!!.
double circle_moment(int a, int b) {
  if (a % 2 != 0 || b % 2 != 0) return 0.0;
  return double_factorial(a - 1) * double_factorial(b - 1) / double_factorial(a + b);
}

}  // namespace

double Observable::analytic_torus_average(const Vec& actions) const {
  double total = 0.0;
  for (const Term& term : terms) {
    double value = term.coeff;
    const std::size_t n_modes =
        std::max(term.q_exp.size(), term.p_exp.size());
    for (std::size_t a = 0; a < n_modes && value != 0.0; ++a) {
      const int eq = a < term.q_exp.size() ? term.q_exp[a] : 0;
      const int ep = a < term.p_exp.size() ? term.p_exp[a] : 0;
      if (eq == 0 && ep == 0) continue;
      const double moment = circle_moment(eq, ep);
      if (moment == 0.0) {
        value = 0.0;
        break;
      }
      value *= moment * std::pow(actions(static_cast<Index>(a)), (eq + ep) / 2);
    }
    total += value;
  }
  return total;
}

double time_average(const HamiltonianSplit& hs, const KahlerState& u0, const ObservableFn& f,
                    double t_final, int steps, std::vector<std::pair<double, double>>* running,
                    int checkpoints) {
  if (!(t_final > 0.0)) throw KahlerError("time_average: t_final must be > 0");
  if (steps < 1) throw KahlerError("time_average: steps must be >= 1");

  const double dt = t_final / steps;
  const KahlerOperator s = exact_propagator(from_complex(hs.to_complex()), dt);

  // Running trapezoid: avg up to step j = (plain_sum - (f0 + fj)/2) / j * ... /dt cancels.
  const double f0 = f(u0);
  double plain_sum = f0;
  KahlerState u = u0;

  const int stride = (running != nullptr && checkpoints > 0)
                         ? std::max(1, steps / checkpoints)
                         : steps + 1;
  if (running) running->clear();

  double fj = f0;
  for (int j = 1; j <= steps; ++j) {
    u = s.apply(u);
    fj = f(u);
    plain_sum += fj;
    if (running && (j % stride == 0 || j == steps)) {
      running->emplace_back(j * dt, (plain_sum - 0.5 * (f0 + fj)) / j);
    }
  }
  return (plain_sum - 0.5 * (f0 + fj)) / steps;
}

double torus_average(const ObservableFn& f, const Vec& actions, int grid, std::uint64_t budget,
                     int threads) {
  const Index n = actions.size();
  if (n < 1) throw DimensionMismatch("torus_average: empty action vector");
  if (grid < 8) throw KahlerError("torus_average: grid must be >= 8");
  for (Index a = 0; a < n; ++a) {
    if (actions(a) < 0.0) throw KahlerError("torus_average: negative action");
  }

  long double space = 1.0L;
  for (Index a = 0; a < n; ++a) space *= static_cast<long double>(grid);
  if (space > static_cast<long double>(budget)) {
    throw SearchSpaceTooLarge("torus_average: grid^" + std::to_string(n) + " = " +
                              std::to_string(static_cast<double>(space)) + " exceeds budget " +
                              std::to_string(budget));
  }
  const std::uint64_t total = static_cast<std::uint64_t>(space);

  Vec amp(n);
  for (Index a = 0; a < n; ++a) amp(a) = std::sqrt(actions(a));
  Vec cos_table(grid), sin_table(grid);
  for (int i = 0; i < grid; ++i) {
    const double theta = kTwoPi * i / grid;
    cos_table(i) = std::cos(theta);
    sin_table(i) = std::sin(theta);
  }

  // Fixed chunk layout (independent of thread count) + fixed per-chunk
  // pairwise trees + ordered final reduction = bit-reproducible sum.
  const int n_chunks = static_cast<int>(std::min<std::uint64_t>(256, total));
  std::vector<double> partial(static_cast<std::size_t>(n_chunks), 0.0);

  parallel_for(n_chunks, threads, [&](int c) {
    const std::uint64_t lo = total * static_cast<std::uint64_t>(c) / n_chunks;
    const std::uint64_t hi = total * (static_cast<std::uint64_t>(c) + 1) / n_chunks;
    KahlerState state = KahlerState::zero(n);
    partial[static_cast<std::size_t>(c)] = pairwise_sum(lo, hi, [&](std::uint64_t flat) {
      std::uint64_t rest = flat;
      for (Index a = n - 1; a >= 0; --a) {
        const int digit = static_cast<int>(rest % static_cast<std::uint64_t>(grid));
        rest /= static_cast<std::uint64_t>(grid);
        state.q(a) = amp(a) * cos_table(digit);
        state.p(a) = amp(a) * sin_table(digit);
      }
      return f(state);
    });
  });

  double sum = 0.0;
  for (int c = 0; c < n_chunks; ++c) sum += partial[static_cast<std::size_t>(c)];
  return sum / static_cast<double>(total);
}

ErgodicityReport ergodicity_experiment(const ComplexOperator& h, const KahlerState& u0,
                                       const ObservableFn& f, const ErgodicityOptions& opt) {
  const NormalModeFrame frame = normal_modes(h);

  ErgodicityReport report;
  report.lambdas = frame.lambdas;
  report.verdict =
      check_rational_independence(frame.lambdas, opt.bound, opt.independence_tol, opt.budget);
  report.initial = to_action_angle(frame, u0);

  // Run the flow in mode coordinates, where the generator is diag(lambda) and
  // the observable's (q~, p~) arguments are the state components themselves.
  const Index n = frame.lambdas.size();
  HamiltonianSplit mode_split;
  mode_split.k_sym = Mat(frame.lambdas.asDiagonal());
  mode_split.l_skew = Mat::Zero(n, n);

  const KahlerState mode0 = frame.transform.apply(u0);
  report.time_avg = time_average(mode_split, mode0, f, opt.t_final, opt.steps, &report.running,
                                 opt.checkpoints);
  report.torus_avg = torus_average(f, report.initial.actions, opt.torus_grid, opt.budget,
                                   opt.threads);
  report.gap = std::abs(report.time_avg - report.torus_avg);
  report.ergodic = report.gap <= opt.gap_tol;
  return report;
}

}  // namespace kahlerq

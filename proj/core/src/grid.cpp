#include "kahlerq/grid.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "kahlerq/errors.hpp"

namespace kahlerq {

namespace {

constexpr Index kBoundaryMargin = 5;

void require_grid_state(const Grid1D& grid, const GridKahlerState& psi, const char* op) {
  if (psi.q.size() != grid.n_points || psi.p.size() != grid.n_points) {
    throw DimensionMismatch(std::string(op) + ": grid has " + std::to_string(grid.n_points) +
                            " points, state has (" + std::to_string(psi.q.size()) + ", " +
                            std::to_string(psi.p.size()) + ")");
  }
}

}  // namespace

Grid1D::Grid1D(double x_min_in, double x_max_in, Index n, double hbar_in, double mass_in)
    : x_min(x_min_in), x_max(x_max_in), n_points(n), hbar(hbar_in), mass(mass_in) {
  if (!(x_max > x_min)) throw KahlerError("Grid1D: need x_max > x_min");
  if (n_points < 16) throw KahlerError("Grid1D: need n_points >= 16");
  if (!(hbar > 0.0) || !(mass > 0.0)) throw KahlerError("Grid1D: hbar and mass must be > 0");
}

Vec Grid1D::x_values() const {
  Vec xs(n_points);
  for (Index j = 0; j < n_points; ++j) xs(j) = x(j);
  return xs;
}

double grid_norm(const Grid1D& grid, const GridKahlerState& psi) {
  require_grid_state(grid, psi, "grid_norm");
  return std::sqrt(grid.spacing() * (psi.q.squaredNorm() + psi.p.squaredNorm()));
}

KahlerState to_coefficients(const Grid1D& grid, const GridKahlerState& psi) {
  require_grid_state(grid, psi, "to_coefficients");
  const double w = std::sqrt(grid.spacing());
  return {w * psi.q, w * psi.p};
}

GridKahlerState from_coefficients(const Grid1D& grid, const KahlerState& u) {
  if (u.dim() != grid.n_points) {
    throw DimensionMismatch("from_coefficients: grid has " + std::to_string(grid.n_points) +
                            " points, state N=" + std::to_string(u.dim()));
  }
  const double w = 1.0 / std::sqrt(grid.spacing());
  return {w * u.q, w * u.p};
}

GridKahlerState sample_profile(const Grid1D& grid, const Profile& f, bool normalize) {
  GridKahlerState psi{Vec(grid.n_points), Vec(grid.n_points)};
  for (Index j = 0; j < grid.n_points; ++j) {
    const std::complex<double> v = f(grid.x(j));
    psi.q(j) = v.real();
    psi.p(j) = v.imag();
  }
  if (normalize) {
    const double norm = grid_norm(grid, psi);
    if (norm > 0.0) {
      psi.q /= norm;
      psi.p /= norm;
    }
  }
  return psi;
}

Profile gaussian_profile(double center, double sigma, double wavenumber) {
  return [center, sigma, wavenumber](double x) {
    const double d = x - center;
    const double envelope = std::exp(-d * d / (4.0 * sigma * sigma));
    return std::polar(envelope, wavenumber * x);
  };
}

Mat derivative_matrix(const Grid1D& grid, Stencil stencil) {
  const Index n = grid.n_points;
  const double h = grid.spacing();
  Mat d = Mat::Zero(n, n);
  if (stencil == Stencil::Central2) {
    const double c = 1.0 / (2.0 * h);
    for (Index j = 0; j < n; ++j) {
      if (j + 1 < n) d(j, j + 1) = c;
      if (j >= 1) d(j, j - 1) = -c;
    }
  } else {
    const double c1 = 8.0 / (12.0 * h);
    const double c2 = 1.0 / (12.0 * h);
    for (Index j = 0; j < n; ++j) {
      if (j + 1 < n) d(j, j + 1) = c1;
      if (j >= 1) d(j, j - 1) = -c1;
      if (j + 2 < n) d(j, j + 2) = -c2;
      if (j >= 2) d(j, j - 2) = c2;
    }
  }
  return d;
}

KahlerOperator position_op(const Grid1D& grid) {
  return gamma_lift({Mat(grid.x_values().asDiagonal()), Mat::Zero(grid.n_points, grid.n_points)});
}

KahlerOperator momentum_op(const Grid1D& grid, Stencil stencil) {
  // -i hbar D = X + iY with X = 0, Y = -hbar D.
  return gamma_lift(
      {Mat::Zero(grid.n_points, grid.n_points), Mat(-grid.hbar * derivative_matrix(grid, stencil))});
}

KahlerOperator translation_generator(const Grid1D& grid, Stencil stencil) {
  return gamma_lift(
      {Mat::Zero(grid.n_points, grid.n_points), Mat(-derivative_matrix(grid, stencil))});
}

GridKahlerState translate(const Grid1D& grid, const GridKahlerState& psi, double a,
                          Stencil stencil) {
  require_grid_state(grid, psi, "translate");
  // exp(-i a P1) = exp(-a D): shift by +a, applied through the exact lifted
  // propagator of the hbar=1 momentum operator.
  const ComplexOperator p1{Mat::Zero(grid.n_points, grid.n_points),
                           Mat(-derivative_matrix(grid, stencil))};
  const KahlerState u = evolve_exact(p1, to_coefficients(grid, psi), a);
  return from_coefficients(grid, u);
}

ComplexOperator schrodinger_hamiltonian(const Grid1D& grid, const Vec& potential) {
  const Index n = grid.n_points;
  if (potential.size() != n) {
    throw DimensionMismatch("schrodinger_hamiltonian: potential has " +
                            std::to_string(potential.size()) + " entries, grid has " +
                            std::to_string(n));
  }
  const double h = grid.spacing();
  const double kinetic = grid.hbar * grid.hbar / (2.0 * grid.mass * h * h);
  Mat k = Mat::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    k(j, j) = 2.0 * kinetic + potential(j);
    if (j + 1 < n) k(j, j + 1) = -kinetic;
    if (j >= 1) k(j, j - 1) = -kinetic;
  }
  return {std::move(k), Mat::Zero(n, n)};
}

Vec harmonic_potential(const Grid1D& grid, double omega) {
  const Vec xs = grid.x_values();
  return 0.5 * grid.mass * omega * omega * xs.cwiseProduct(xs);
}

ExpectationValue grid_expectation(const Grid1D& grid, const KahlerOperator& m,
                                  const GridKahlerState& psi) {
  return expectation(m, to_coefficients(grid, psi));
}

double grid_hsym(const Grid1D& grid, const ComplexOperator& h, const GridKahlerState& psi) {
  return hsym_value(split_hamiltonian(h), to_coefficients(grid, psi));
}

double commutator_residual(const Grid1D& grid, const GridKahlerState& psi, Stencil stencil) {
  require_grid_state(grid, psi, "commutator_residual");
  const Index n = grid.n_points;
  const double norm = grid_norm(grid, psi);
  if (norm == 0.0) return 0.0;

  // Precondition: negligible weight in the boundary bands, where the
  // truncated stencil makes the identity meaningless.
  for (Index j = 0; j < n; ++j) {
    if (j >= kBoundaryMargin && j < n - kBoundaryMargin) continue;
    const double mag = std::hypot(psi.q(j), psi.p(j));
    if (mag > 1e-8) {
      char detail[96];
      std::snprintf(detail, sizeof(detail), "commutator_residual: |psi| = %.3e at boundary point %lld",
                    mag, static_cast<long long>(j));
      throw BoundarySupport(detail);
    }
  }

  const Mat d = derivative_matrix(grid, stencil);
  const Vec xs = grid.x_values();
  // [D, x] v = D(x.*v) - x.*(D v); the identity predicts [D, x] = I, so the
  // defect vector is ([D, x] - I) applied to each component.  [P, Q] + hbar J
  // applied to psi has exactly these components times hbar (up to the J
  // block swap, which preserves the norm).
  const Vec wq = d * xs.cwiseProduct(psi.q).eval() - xs.cwiseProduct((d * psi.q).eval()) - psi.q;
  const Vec wp = d * xs.cwiseProduct(psi.p).eval() - xs.cwiseProduct((d * psi.p).eval()) - psi.p;

  double interior_sq = 0.0;
  for (Index j = kBoundaryMargin; j < n - kBoundaryMargin; ++j) {
    interior_sq += wq(j) * wq(j) + wp(j) * wp(j);
  }
  const double residual = grid.hbar * std::sqrt(grid.spacing() * interior_sq);
  return residual / norm;
}

CommutatorReport commutator_check(const Grid1D& grid, const Profile& f, Stencil stencil) {
  const Grid1D fine = grid.refined();
  CommutatorReport report;
  report.n_coarse = grid.n_points;
  report.n_fine = fine.n_points;
  report.stencil = stencil;
  report.residual_coarse = commutator_residual(grid, sample_profile(grid, f), stencil);
  report.residual_fine = commutator_residual(fine, sample_profile(fine, f), stencil);
  report.ratio = report.residual_fine > 0.0 ? report.residual_coarse / report.residual_fine : 0.0;
  return report;
}

GridKahlerState evolve_grid_exact(const Grid1D& grid, const ComplexOperator& h,
                                  const GridKahlerState& psi, double t) {
  require_grid_state(grid, psi, "evolve_grid_exact");
  // Schrodinger generator is H / hbar; exp(-i H t / hbar).
  return from_coefficients(grid,
                           evolve_exact(h, to_coefficients(grid, psi), t / grid.hbar));
}

}  // namespace kahlerq

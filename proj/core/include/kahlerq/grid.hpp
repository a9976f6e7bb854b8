#pragma once

#include <complex>
#include <functional>

#include "kahlerq/dynamics.hpp"
#include "kahlerq/operators.hpp"
#include "kahlerq/state.hpp"
#include "kahlerq/types.hpp"

namespace kahlerq {

// Uniform cell-centered 1D grid with Dirichlet (zero-padding) boundaries.
// hbar and mass are explicit here; the finite-dimensional modules work in
// hbar = 1 units.
struct Grid1D {
  double x_min = 0.0;
  double x_max = 0.0;
  Index n_points = 0;
  double hbar = 1.0;
  double mass = 1.0;

  Grid1D() = default;
  Grid1D(double x_min_in, double x_max_in, Index n, double hbar_in = 1.0, double mass_in = 1.0);

  double spacing() const { return (x_max - x_min) / static_cast<double>(n_points); }
  double x(Index j) const { return x_min + (static_cast<double>(j) + 0.5) * spacing(); }
  Vec x_values() const;

  // Same interval, twice the resolution (for convergence studies).
  Grid1D refined() const { return {x_min, x_max, 2 * n_points, hbar, mass}; }
};

// Samples of Re psi(x_j), Im psi(x_j).  The physical norm carries the measure
// weight h: |psi|^2 = h * sum_j (q_j^2 + p_j^2).
struct GridKahlerState {
  Vec q;
  Vec p;
};

double grid_norm(const Grid1D& grid, const GridKahlerState& psi);

// Coefficient representation c = sqrt(h) * psi, in which the weighted inner
// product becomes the plain dot product and grid operators act as ordinary
// matrices.  All KahlerOperator algebra runs on coefficients.
KahlerState to_coefficients(const Grid1D& grid, const GridKahlerState& psi);
GridKahlerState from_coefficients(const Grid1D& grid, const KahlerState& u);

// Evaluate a complex profile at the cell centers; normalize to unit weighted
// norm unless told otherwise.
using Profile = std::function<std::complex<double>(double)>;
GridKahlerState sample_profile(const Grid1D& grid, const Profile& f, bool normalize = true);

// exp(-(x-center)^2 / (4 sigma^2)) * exp(i k x):  |psi|^2 is the Gaussian of
// standard deviation sigma around `center`, carrying momentum hbar*k.
Profile gaussian_profile(double center, double sigma, double wavenumber = 0.0);

enum class Stencil { Central2, Central4 };

// Antisymmetric central-difference d/dx with zero padding outside the grid.
Mat derivative_matrix(const Grid1D& grid, Stencil stencil = Stencil::Central2);

// Multiplication by x: lift of (diag(x), 0).
KahlerOperator position_op(const Grid1D& grid);

// -J d/dx scaled by hbar, i.e. the lift of -i hbar D.  K-Hermitian since D is
// real antisymmetric.
KahlerOperator momentum_op(const Grid1D& grid, Stencil stencil = Stencil::Central2);

// momentum_op at hbar = 1: the generator whose lifted one-parameter group
// translates grid states.
KahlerOperator translation_generator(const Grid1D& grid, Stencil stencil = Stencil::Central2);

// Gamma(exp(-a D)) applied to psi: shifts the profile by +a (up to O(h^2)
// interpolation error).
GridKahlerState translate(const Grid1D& grid, const GridKahlerState& psi, double a,
                          Stencil stencil = Stencil::Central2);

// H = -(hbar^2 / 2m) Laplacian + diag(V), 3-point Laplacian, Dirichlet.
ComplexOperator schrodinger_hamiltonian(const Grid1D& grid, const Vec& potential);

Vec harmonic_potential(const Grid1D& grid, double omega = 1.0);  // 1/2 m omega^2 x^2

// Expectation of a lifted grid operator in a grid state (weighted measure).
ExpectationValue grid_expectation(const Grid1D& grid, const KahlerOperator& m,
                                  const GridKahlerState& psi);

// H_sym of a grid state under the given grid Hamiltonian (= 1/2 Re <psi|H|psi>).
double grid_hsym(const Grid1D& grid, const ComplexOperator& h, const GridKahlerState& psi);

// Relative residual of ([P, Q] + hbar J) psi over the interior (5-point
// boundary bands excluded; stencils are truncated there).  Throws
// BoundarySupport when psi carries weight > 1e-8 in the bands.
double commutator_residual(const Grid1D& grid, const GridKahlerState& psi,
                           Stencil stencil = Stencil::Central2);

struct CommutatorReport {
  Index n_coarse = 0;
  Index n_fine = 0;
  double residual_coarse = 0.0;
  double residual_fine = 0.0;
  double ratio = 0.0;  // residual_coarse / residual_fine, ~4 for Central2
  Stencil stencil = Stencil::Central2;
};

// Convergence check of the commutator identity: sample the profile on the
// grid and on its 2x refinement and compare residuals.  The profile (not a
// fixed-resolution state) is the input so the refined run resamples exactly.
CommutatorReport commutator_check(const Grid1D& grid, const Profile& f,
                                  Stencil stencil = Stencil::Central2);

// Exact evolution of a grid state under grid Hamiltonian h for time t,
// using the generator H / hbar.
GridKahlerState evolve_grid_exact(const Grid1D& grid, const ComplexOperator& h,
                                  const GridKahlerState& psi, double t);

}  // namespace kahlerq

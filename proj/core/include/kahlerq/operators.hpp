#pragma once

#include "kahlerq/state.hpp"
#include "kahlerq/types.hpp"

namespace kahlerq {

// L = X + i Y acting on C^N, held as two real N x N parts.
struct ComplexOperator {
  Mat x;
  Mat y;

  ComplexOperator() = default;
  ComplexOperator(Mat x_in, Mat y_in);  // throws DimensionMismatch unless both are square N x N

  static ComplexOperator identity(Index n);

  Index dim() const { return x.rows(); }
  CMat to_complex() const;  // X + i Y
};

ComplexOperator from_complex(const CMat& m);

// The real 2N x 2N image of the lift, block form [[X, -Y], [Y, X]] in the
// stacked (q; p) basis.  Such matrices are exactly the ones commuting with J.
struct KahlerOperator {
  Mat block;

  KahlerOperator() = default;
  explicit KahlerOperator(Mat b);  // throws DimensionMismatch unless square with even size

  static KahlerOperator identity(Index n);
  static KahlerOperator complex_structure(Index n);  // the lift of i: J itself

  Index dim_n() const { return block.rows() / 2; }

  KahlerState apply(const KahlerState& u) const;
};

// gamma_lift: L = X + iY  ->  [[X, -Y], [Y, X]], the algebra homomorphism with
// gamma(L psi) = gamma_lift(L) (q; p).
KahlerOperator gamma_lift(const ComplexOperator& l);

// How far a 2Nx2N matrix [[A, B], [C, D]] sits from the image of the lift:
// max(|A - D|, |B + C|) in max-abs, equivalently the commutator defect with J.
double lift_defect(const KahlerOperator& m);

// Inverse of the lift: X = (A + D)/2, Y = (C - B)/2.  Throws StructureViolation
// when lift_defect(m) > tol.
ComplexOperator gamma_lower(const KahlerOperator& m, double tol = 1e-10);

KahlerOperator compose(const KahlerOperator& a, const KahlerOperator& b);

// Block transpose [[A^T, C^T], [B^T, D^T]]; equals gamma_lift(L^dagger) on lift
// images, and doubles as the g-adjoint there.
KahlerOperator k_adjoint(const KahlerOperator& m);

// Residuals behind the membership predicates (all max-abs, all computed with
// J and Omega applied block-wise, never materialized).
double symmetry_defect(const KahlerOperator& m);        // m^T - m
double omega_commutant_defect(const KahlerOperator& m); // m Omega - Omega m
double orthogonality_defect(const KahlerOperator& m);   // m^T m - I
double symplectic_defect(const KahlerOperator& m);      // m^T J m - J

// Hermitian observable test: symmetric AND commutes with Omega.
bool is_k_hermitian(const KahlerOperator& m, double tol = 1e-10);

// Unitary test: symplectic AND orthogonal (the intersection that pins down
// lifted unitaries; either alone admits non-lift members such as squeezes).
bool is_k_unitary(const KahlerOperator& m, double tol = 1e-10);

// Both slots of <psi, M psi> = g(u, Mu) + i omega(u, Mu).  For a K-Hermitian M
// the omega part is the reality check: it must vanish.
struct ExpectationValue {
  double g_part = 0.0;
  double omega_part = 0.0;
};
ExpectationValue expectation(const KahlerOperator& m, const KahlerState& u);

// Projective measurement of the branch picked out by a lifted orthogonal
// projector.  Throws NotAProjector unless p is K-Hermitian and idempotent
// within tol; ZeroProbabilityBranch when the branch weight is below prob_floor.
struct MeasurementOutcome {
  double probability = 0.0;
  KahlerState post_state;
};
MeasurementOutcome measure(const KahlerOperator& p, const KahlerState& u, double tol = 1e-10,
                           double prob_floor = 1e-14);

}  // namespace kahlerq

#pragma once

#include "kahlerq/types.hpp"

namespace kahlerq {

// A point (q, p) of R^{2N}, standing for the wavefunction psi = q + i p.
// Stacked layout is always (q; p) with q first.
struct KahlerState {
  Vec q;
  Vec p;

  KahlerState() = default;
  KahlerState(Vec q_in, Vec p_in);  // throws DimensionMismatch if sizes differ

  static KahlerState zero(Index n);

  Index dim() const { return q.size(); }

  Vec stacked() const;
  static KahlerState from_stacked(const Vec& v);  // throws DimensionMismatch if odd length
};

KahlerState operator+(const KahlerState& a, const KahlerState& b);
KahlerState operator-(const KahlerState& a, const KahlerState& b);
KahlerState operator*(double s, const KahlerState& u);

// gamma: (q, p) -> q + i p, and its inverse.
CVec complexify(const KahlerState& u);
KahlerState decomplexify(const CVec& v);

// Riemannian metric  g(u, v) = q_u . q_v + p_u . p_v  (real part of <gamma u, gamma v>).
double metric_g(const KahlerState& u, const KahlerState& v);

// Symplectic form  omega(u, v) = q_u . p_v - p_u . q_v  (imaginary part of the same).
double symplectic_omega(const KahlerState& u, const KahlerState& v);

// Complex structure  J(q, p) = (-p, q);  gamma(J u) = i gamma(u).  Applied as a
// permute-and-negate kernel, never as a stored 2Nx2N matrix.
KahlerState apply_J(const KahlerState& u);

// Omega(q, p) = (p, -q), the matrix of omega in the stacked basis (= -J = J^T).
KahlerState apply_Omega(const KahlerState& u);

double g_norm(const KahlerState& u);
KahlerState normalized(const KahlerState& u);  // throws KahlerError on the zero state

}  // namespace kahlerq

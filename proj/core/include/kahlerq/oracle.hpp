#pragma once

#include "kahlerq/types.hpp"

// Reference implementations on the complex side.  Everything here goes the
// conventional C^N route (Eigen complex solvers, standard inner product) and
// exists so the real-space code paths always have an independent answer to be
// checked against.  Real-space code must not call into this namespace except
// where an operation is deliberately defined by the complex spectral route
// (e.g. the exact propagator); everything else would defeat the cross-check.
namespace kahlerq::oracle {

// <a, b> with the conjugate on the FIRST slot, so <a, i b> = i <a, b>.
std::complex<double> hermitian_inner(const CVec& a, const CVec& b);

double hermitian_residual(const CMat& h);  // max-abs of H - H^dagger
bool is_hermitian(const CMat& h, double tol = 1e-10);

// exp(-i H t) through the spectral decomposition of Hermitian H.
// Throws NotHermitian if the defect of h exceeds herm_tol.
CMat propagator(const CMat& h, double t, double herm_tol = 1e-10);

}  // namespace kahlerq::oracle

#include "kahlerq/oracle.hpp"

#include <string>

#include "kahlerq/errors.hpp"

namespace kahlerq::oracle {

std::complex<double> hermitian_inner(const CVec& a, const CVec& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("hermitian_inner: sizes " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  return a.dot(b);  // Eigen conjugates the left operand
}

double hermitian_residual(const CMat& h) {
  if (h.rows() != h.cols()) {
    throw DimensionMismatch("hermitian_residual: matrix is " + std::to_string(h.rows()) + "x" +
                            std::to_string(h.cols()));
  }
  return max_abs(CMat(h - h.adjoint()));
}

bool is_hermitian(const CMat& h, double tol) { return hermitian_residual(h) <= tol; }

CMat propagator(const CMat& h, double t, double herm_tol) {
  const double defect = hermitian_residual(h);
  if (defect > herm_tol) {
    throw NotHermitian("propagator: Hermitian defect " + std::to_string(defect));
  }
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success) throw SolverFailure("propagator: eigensolver failed");
  const Vec lam = es.eigenvalues();
  CVec phases(lam.size());
  for (Index a = 0; a < lam.size(); ++a) {
    phases(a) = std::exp(-kImag * lam(a) * t);
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace kahlerq::oracle

#include "kahlerq/operators.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "kahlerq/errors.hpp"

namespace kahlerq {

namespace {

// Views of the four N x N blocks of a 2N x 2N matrix.
auto blk(const Mat& m, int i, int j) {
  const Index n = m.rows() / 2;
  return m.block(i * n, j * n, n, n);
}

void require_same_n(const KahlerOperator& a, const KahlerOperator& b, const char* op) {
  if (a.dim_n() != b.dim_n()) {
    throw DimensionMismatch(std::string(op) + ": operators act on N=" + std::to_string(a.dim_n()) +
                            " and N=" + std::to_string(b.dim_n()));
  }
}

}  // namespace

ComplexOperator::ComplexOperator(Mat x_in, Mat y_in) : x(std::move(x_in)), y(std::move(y_in)) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw DimensionMismatch("ComplexOperator: parts must be square and equal-sized, got " +
                            std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + " and " +
                            std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
  }
}

ComplexOperator ComplexOperator::identity(Index n) {
  return {Mat::Identity(n, n), Mat::Zero(n, n)};
}

CMat ComplexOperator::to_complex() const {
  return x.cast<std::complex<double>>() + kImag * y.cast<std::complex<double>>();
}

ComplexOperator from_complex(const CMat& m) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch("from_complex: matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
  }
  return {m.real(), m.imag()};
}

KahlerOperator::KahlerOperator(Mat b) : block(std::move(b)) {
  if (block.rows() != block.cols() || block.rows() % 2 != 0) {
    throw DimensionMismatch("KahlerOperator: need even square matrix, got " +
                            std::to_string(block.rows()) + "x" + std::to_string(block.cols()));
  }
}

KahlerOperator KahlerOperator::identity(Index n) {
  return KahlerOperator(Mat::Identity(2 * n, 2 * n));
}

KahlerOperator KahlerOperator::complex_structure(Index n) {
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.block(0, n, n, n) = -Mat::Identity(n, n);
  j.block(n, 0, n, n) = Mat::Identity(n, n);
  return KahlerOperator(std::move(j));
}

KahlerState KahlerOperator::apply(const KahlerState& u) const {
  const Index n = dim_n();
  if (u.dim() != n) {
    throw DimensionMismatch("KahlerOperator::apply: operator N=" + std::to_string(n) +
                            ", state N=" + std::to_string(u.dim()));
  }
  return {blk(block, 0, 0) * u.q + blk(block, 0, 1) * u.p,
          blk(block, 1, 0) * u.q + blk(block, 1, 1) * u.p};
}

KahlerOperator gamma_lift(const ComplexOperator& l) {
  const Index n = l.dim();
  Mat b(2 * n, 2 * n);
  b.block(0, 0, n, n) = l.x;
  b.block(0, n, n, n) = -l.y;
  b.block(n, 0, n, n) = l.y;
  b.block(n, n, n, n) = l.x;
  return KahlerOperator(std::move(b));
}

double lift_defect(const KahlerOperator& m) {
  const Mat& b = m.block;
  return std::max(max_abs(Mat(blk(b, 0, 0) - blk(b, 1, 1))),
                  max_abs(Mat(blk(b, 0, 1) + blk(b, 1, 0))));
}

ComplexOperator gamma_lower(const KahlerOperator& m, double tol) {
  const double defect = lift_defect(m);
  if (defect > tol) {
    throw StructureViolation("gamma_lower: matrix is not a lift image, defect " +
                             std::to_string(defect) + " > tol " + std::to_string(tol));
  }
  const Mat& b = m.block;
  return {0.5 * (blk(b, 0, 0) + blk(b, 1, 1)), 0.5 * (blk(b, 1, 0) - blk(b, 0, 1))};
}

KahlerOperator compose(const KahlerOperator& a, const KahlerOperator& b) {
  require_same_n(a, b, "compose");
  return KahlerOperator(a.block * b.block);
}

KahlerOperator k_adjoint(const KahlerOperator& m) {
  const Mat& b = m.block;
  const Index n = m.dim_n();
  Mat t(2 * n, 2 * n);
  t.block(0, 0, n, n) = blk(b, 0, 0).transpose();
  t.block(0, n, n, n) = blk(b, 1, 0).transpose();
  t.block(n, 0, n, n) = blk(b, 0, 1).transpose();
  t.block(n, n, n, n) = blk(b, 1, 1).transpose();
  return KahlerOperator(std::move(t));
}

double symmetry_defect(const KahlerOperator& m) {
  return max_abs(Mat(m.block.transpose() - m.block));
}

double omega_commutant_defect(const KahlerOperator& m) {
  // With m = [[A, B], [C, D]]:  m Omega - Omega m = [[-(B+C), A-D], [A-D, B+C]].
  return std::max(max_abs(Mat(blk(m.block, 0, 1) + blk(m.block, 1, 0))),
                  max_abs(Mat(blk(m.block, 0, 0) - blk(m.block, 1, 1))));
}

double orthogonality_defect(const KahlerOperator& m) {
  const Index d = m.block.rows();
  return max_abs(Mat(m.block.transpose() * m.block - Mat::Identity(d, d)));
}

double symplectic_defect(const KahlerOperator& m) {
  // J m computed block-wise: [[-C, -D], [A, B]]; then compare m^T (J m) to J.
  const Mat& b = m.block;
  const Index n = m.dim_n();
  Mat jm(2 * n, 2 * n);
  jm.topRows(n) = -b.bottomRows(n);
  jm.bottomRows(n) = b.topRows(n);
  Mat t = b.transpose() * jm;
  t.block(0, n, n, n) += Mat::Identity(n, n);
  t.block(n, 0, n, n) -= Mat::Identity(n, n);
  return max_abs(t);
}

bool is_k_hermitian(const KahlerOperator& m, double tol) {
  return symmetry_defect(m) <= tol && omega_commutant_defect(m) <= tol;
}

bool is_k_unitary(const KahlerOperator& m, double tol) {
  return symplectic_defect(m) <= tol && orthogonality_defect(m) <= tol;
}

ExpectationValue expectation(const KahlerOperator& m, const KahlerState& u) {
  const KahlerState mu = m.apply(u);
  return {metric_g(u, mu), symplectic_omega(u, mu)};
}

MeasurementOutcome measure(const KahlerOperator& p, const KahlerState& u, double tol,
                           double prob_floor) {
  if (!is_k_hermitian(p, tol)) {
    throw NotAProjector("measure: operator is not K-Hermitian");
  }
  const double idem = max_abs(Mat(p.block * p.block - p.block));
  if (idem > tol) {
    throw NotAProjector("measure: idempotency defect " + std::to_string(idem));
  }
  const double norm_defect = std::abs(metric_g(u, u) - 1.0);
  if (norm_defect > std::max(tol, 1e-10)) {
    throw KahlerError("measure: state not g-normalized, |g(u,u)-1| = " +
                      std::to_string(norm_defect));
  }
  const KahlerState pu = p.apply(u);
  // Squared weight of the projected branch; the Born probability.
  const double prob = metric_g(pu, pu);
  if (prob < prob_floor) {
    throw ZeroProbabilityBranch("measure: branch probability " + std::to_string(prob));
  }
  return {prob, (1.0 / std::sqrt(prob)) * pu};
}

}  // namespace kahlerq

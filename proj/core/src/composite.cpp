#include "kahlerq/composite.hpp"

#include <cmath>

#include "kahlerq/errors.hpp"

namespace kahlerq {

namespace {

void require_positive(Index m, Index n) {
  if (m < 1 || n < 1) {
    throw DimensionMismatch("tensor dims must be >= 1, got (" + std::to_string(m) + ", " +
                            std::to_string(n) + ")");
  }
}

// Row-major Kronecker product of real vectors: out[i*n + j] = a[i] * b[j].
Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

CompositeLabel tensor_dim_real(Index m, Index n) {
  require_positive(m, n);
  return {TensorField::RealField, m, n, 4 * m * n};
}

CompositeLabel tensor_dim_complex(Index m, Index n) {
  require_positive(m, n);
  return {TensorField::ComplexField, m, n, 2 * m * n};
}

KahlerState tensor_state_complex(const KahlerState& a, const KahlerState& b) {
  // (q_a + i p_a) (x) (q_b + i p_b), expanded into real components.
  return {kron(a.q, b.q) - kron(a.p, b.p), kron(a.q, b.p) + kron(a.p, b.q)};
}

KahlerOperator tensor_operator_complex(const KahlerOperator& a, const KahlerOperator& b,
                                       double tol) {
  const ComplexOperator la = gamma_lower(a, tol);
  const ComplexOperator lb = gamma_lower(b, tol);
  // (X_a + iY_a) (x) (X_b + iY_b) with the same row-major Kronecker convention.
  return gamma_lift({kron(la.x, lb.x) - kron(la.y, lb.y), kron(la.x, lb.y) + kron(la.y, lb.x)});
}

KahlerState entangled_pair(PairKind kind) {
  switch (kind) {
    case PairKind::BellPhiPlus: {
      const double s = 1.0 / std::sqrt(2.0);
      Vec q = Vec::Zero(4);
      q(0) = s;  // |00>
      q(3) = s;  // |11>
      return {q, Vec::Zero(4)};
    }
  }
  throw KahlerError("entangled_pair: unknown kind");
}

}  // namespace kahlerq

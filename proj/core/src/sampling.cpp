#include "kahlerq/sampling.hpp"

namespace kahlerq {

Vec random_vec(Rng& rng, Index n) {
  Vec v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.gaussian();
  return v;
}

Mat random_mat(Rng& rng, Index rows, Index cols) {
  Mat m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
  }
  return m;
}

KahlerState random_state(Rng& rng, Index n, bool normalize) {
  KahlerState u{random_vec(rng, n), random_vec(rng, n)};
  return normalize ? normalized(u) : u;
}

CMat random_cmat(Rng& rng, Index n) {
  const Mat re = random_mat(rng, n, n);
  const Mat im = random_mat(rng, n, n);
  return re.cast<std::complex<double>>() + kImag * im.cast<std::complex<double>>();
}

CMat random_hermitian(Rng& rng, Index n) {
  const CMat a = random_cmat(rng, n);
  return 0.5 * (a + a.adjoint());  // entries pair up exactly: H(i,j) == conj(H(j,i))
}

CMat random_unitary(Rng& rng, Index n) {
  const CMat a = random_cmat(rng, n);
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ();
  // Fix the phase ambiguity so the draw is a deterministic function of a.
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

}  // namespace kahlerq

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace kahlerq {

using Index = Eigen::Index;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr std::complex<double> kImag{0.0, 1.0};

// Largest absolute entry; the residual norm used by every structural check.
inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
inline double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
inline double max_abs(const CVec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace kahlerq

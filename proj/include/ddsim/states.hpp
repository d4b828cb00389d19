#pragma once

#include <Eigen/Eigenvalues>

#include "ddsim/matrix_ops.hpp"
#include "ddsim/operator_types.hpp"

namespace ddsim {

inline double trace_distance(const Mat& r1, const Mat& r2) {
  require_square(r1, "trace_distance");
  if (r1.rows() != r2.rows())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  return 0.5 * trace_norm(r1 - r2);
}

inline double trace_distance(const DensityMatrix& r1, const DensityMatrix& r2) {
  return trace_distance(r1.mat(), r2.mat());
}

// PSD square root; small negative eigenvalues (within tol) clamp to zero.
inline Mat psd_sqrt(const Mat& r, double tol = kDensityTol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitize(r));
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("psd_sqrt: matrix not PSD within tolerance");
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
}

// F(r1, r2) = || sqrt(r1) sqrt(r2) ||_1   (equals |<psi1|psi2>| on pure states)
inline double fidelity(const Mat& r1, const Mat& r2) {
  require_square(r1, "fidelity");
  if (r1.rows() != r2.rows())
    throw std::invalid_argument("fidelity: dimension mismatch");
  return trace_norm(psd_sqrt(r1) * psd_sqrt(r2));
}

inline double fidelity(const DensityMatrix& r1, const DensityMatrix& r2) {
  return fidelity(r1.mat(), r2.mat());
}

inline DensityMatrix pure_state(const Vec& psi) {
  double n2 = psi.squaredNorm();
  if (n2 <= 0.0) throw std::invalid_argument("pure_state: zero vector");
  Mat rho = (psi * psi.adjoint()) / n2;
  return DensityMatrix(rho);
}

inline DensityMatrix maximally_mixed(Eigen::Index d) {
  return DensityMatrix(Mat(eye(d) / static_cast<double>(d)));
}

}  // namespace ddsim

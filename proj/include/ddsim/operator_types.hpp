#pragma once

#include <Eigen/Eigenvalues>

#include "ddsim/matrix_ops.hpp"

namespace ddsim {

constexpr double kHermTol = 1e-12;     // relative Hermiticity defect
constexpr double kUnitaryTol = 1e-10;  // ||U^dag U - I||
constexpr double kDensityTol = 1e-12;  // trace / positivity slack

// Hermitian operator; construction re-symmetrizes after checking the defect.
class HermitianOp {
 public:
  explicit HermitianOp(const Mat& a) {
    require_square(a, "HermitianOp");
    double scale = std::max(1.0, op_norm(a));
    if (hermiticity_defect(a) > kHermTol * scale)
      throw std::invalid_argument("HermitianOp: not Hermitian within tolerance");
    m_ = hermitize(a);
  }
  const Mat& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Mat m_;
};

class UnitaryOp {
 public:
  explicit UnitaryOp(const Mat& u) : m_(u) {
    require_square(u, "UnitaryOp");
    if (unitarity_defect(u) > kUnitaryTol)
      throw std::invalid_argument("UnitaryOp: not unitary within tolerance");
  }
  const Mat& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Mat m_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(const Mat& r) {
    require_square(r, "DensityMatrix");
    if (hermiticity_defect(r) > kHermTol * std::max(1.0, op_norm(r)))
      throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    Mat h = hermitize(r);
    if (std::abs(h.trace().real() - 1.0) > kDensityTol || std::abs(h.trace().imag()) > kDensityTol)
      throw std::invalid_argument("DensityMatrix: trace must be 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.eigenvalues().minCoeff() < -kDensityTol)
      throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond tolerance");
    m_ = h;
  }
  const Mat& mat() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

 private:
  Mat m_;
};

}  // namespace ddsim

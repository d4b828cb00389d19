#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <complex>
#include <stdexcept>
#include <string>

namespace ddsim {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cplx = std::complex<double>;

constexpr double kAlgebraTol = 1e-10;   // algebraic identities
constexpr double kRoundTripTol = 1e-8;  // exp/log round trips

inline Mat eye(Eigen::Index d) { return Mat::Identity(d, d); }

inline void require_square(const Mat& a, const char* who) {
  if (a.rows() != a.cols())
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  if (!a.allFinite())
    throw std::invalid_argument(std::string(who) + ": non-finite entries");
}

// Kronecker product, row-major index convention: (a ⊗ b)[i*rb + k, j*cb + l].
// First factor owns the most significant index block.
inline Mat tensor(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

enum class NormKind { Trace, Frobenius, Operator };

inline Eigen::VectorXd singular_values(const Mat& a) {
  // JacobiSVD on purpose: BDCSVD (the divide-and-conquer path, size >= 16)
  // misdeflates repeated singular values on complex input in eigen 3.4.0,
  // and tensor-with-identity embeddings make degenerate spectra the common
  // case here. Values come back sorted descending.
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues();
}

inline double norm(const Mat& a, NormKind kind) {
  require_square(a, "norm");
  switch (kind) {
    case NormKind::Frobenius:
      return a.norm();
    case NormKind::Trace:
      return singular_values(a).sum();
    case NormKind::Operator: {
      if (a.rows() == 0) return 0.0;
      return singular_values(a)(0);
    }
  }
  throw std::logic_error("norm: bad kind");
}

inline double op_norm(const Mat& a) { return norm(a, NormKind::Operator); }
inline double trace_norm(const Mat& a) { return norm(a, NormKind::Trace); }

inline Mat hermitize(const Mat& a) { return 0.5 * (a + a.adjoint()); }

inline double hermiticity_defect(const Mat& a) {
  return op_norm(a - Mat(a.adjoint()));
}

inline double unitarity_defect(const Mat& u) {
  return op_norm(Mat(u.adjoint() * u) - eye(u.rows()));
}

inline Mat commutator(const Mat& a, const Mat& b) { return a * b - b * a; }

// tr_B over the trailing factor of a system ⊗ bath product space.
inline Mat partial_trace_bath(const Mat& x, Eigen::Index dim_bath) {
  require_square(x, "partial_trace_bath");
  if (dim_bath <= 0 || x.rows() % dim_bath != 0)
    throw std::invalid_argument("partial_trace_bath: bath dimension must divide total");
  const Eigen::Index ds = x.rows() / dim_bath;
  Mat out = Mat::Zero(ds, ds);
  for (Eigen::Index s = 0; s < ds; ++s)
    for (Eigen::Index t = 0; t < ds; ++t)
      for (Eigen::Index b = 0; b < dim_bath; ++b)
        out(s, t) += x(s * dim_bath + b, t * dim_bath + b);
  return out;
}

// Smallest factor with ||tr_B x||_k <= factor * ||x||_k for all x on S (x) B.
// Saturated by x = a (x) I_B for every norm kind.
inline double partial_trace_norm_factor(NormKind kind, Eigen::Index dim_bath) {
  switch (kind) {
    case NormKind::Trace: return 1.0;
    case NormKind::Frobenius: return std::sqrt(static_cast<double>(dim_bath));
    case NormKind::Operator: return static_cast<double>(dim_bath);
  }
  throw std::invalid_argument("partial_trace_norm_factor: unknown norm kind");
}

// Distance modulo a global phase: min over alpha of ||a - e^{i alpha} b||_op.
// The optimal phase is arg tr(b^dag a); we just evaluate there.
inline double phase_dist(const Mat& a, const Mat& b) {
  cplx ovl = (b.adjoint() * a).trace();
  cplx phase = (std::abs(ovl) < 1e-300) ? cplx(1, 0) : ovl / std::abs(ovl);
  return op_norm(a - phase * b);
}

}  // namespace ddsim

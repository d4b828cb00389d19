#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "ddsim/matrix_ops.hpp"
#include "ddsim/operator_types.hpp"

namespace ddsim {

constexpr double kBranchCutTol = 1e-8;  // eigenphase clearance from ±pi

struct BranchCutError : std::runtime_error {
  explicit BranchCutError(double phase)
      : std::runtime_error("unitary_log: eigenphase within " +
                           std::to_string(kBranchCutTol) +
                           " of the ±pi branch cut (|phase| = " +
                           std::to_string(phase) + ")"),
        eigenphase(phase) {}
  double eigenphase;
};

// exp(-i t H) for Hermitian H, via spectral decomposition. Unitary by
// construction up to eigensolver roundoff.
inline Mat expm_hermitian(const Mat& h, double t) {
  require_square(h, "expm_hermitian");
  Mat hs = hermitize(h);
  Eigen::SelfAdjointEigenSolver<Mat> es(hs);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("expm_hermitian: eigensolver failed");
  Vec phases(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(cplx(0.0, -t * es.eigenvalues()(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Mat expm_hermitian(const HermitianOp& h, double t) {
  return expm_hermitian(h.mat(), t);
}

// Principal Hermitian generator Phi with U = exp(-i Phi), eigenphases in
// (-pi, pi]. Uses the Schur form: for a (numerically) unitary input T is
// diagonal up to the unitarity defect, and Q is exactly orthonormal, which
// keeps degenerate eigenspaces well-conditioned. Throws BranchCutError when
// any eigenphase comes within kBranchCutTol of ±pi.
inline Mat unitary_log(const Mat& u) {
  require_square(u, "unitary_log");
  if (unitarity_defect(u) > kUnitaryTol)
    throw std::invalid_argument("unitary_log: input not unitary within tolerance");
  Eigen::ComplexSchur<Mat> schur(u);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("unitary_log: Schur decomposition failed");
  const Mat& t = schur.matrixT();
  const Mat& q = schur.matrixU();
  Eigen::VectorXd phi(u.rows());
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    // eigenvalue e^{-i phi} -> phi = -arg
    double p = -std::arg(t(k, k));
    if (std::numbers::pi - std::abs(p) < kBranchCutTol) throw BranchCutError(p);
    phi(k) = p;
  }
  return hermitize(q * phi.asDiagonal() * q.adjoint());
}

inline Mat unitary_log(const UnitaryOp& u) { return unitary_log(u.mat()); }

// e^{-iA} B e^{iA}
inline Mat adjoint_map(const Mat& a, const Mat& b) {
  Mat u = expm_hermitian(a, 1.0);
  return u * b * u.adjoint();
}

inline Mat adjoint_map(const HermitianOp& a, const Mat& b) {
  return adjoint_map(a.mat(), b);
}

// Truncated series Sum_n (-i)^n/n! [A,[A,...,[A,B]]], n = 0..terms.
// Reference implementation used to cross-check adjoint_map.
inline Mat adjoint_series(const Mat& a, const Mat& b, int terms) {
  Mat acc = b;
  Mat nested = b;
  cplx coef(1.0, 0.0);
  double fact = 1.0;
  for (int n = 1; n <= terms; ++n) {
    nested = commutator(a, nested);
    coef *= cplx(0.0, -1.0);
    fact *= n;
    acc += (coef / fact) * nested;
  }
  return acc;
}

// Unitary m-th power through the Schur form: discards the (tiny) strictly
// upper part once, then powers exact eigenphases. Stays unitary for large m.
inline Mat unitary_power(const Mat& u, long long m) {
  require_square(u, "unitary_power");
  if (m == 0) return eye(u.rows());
  Eigen::ComplexSchur<Mat> schur(u);
  Vec d(u.rows());
  for (Eigen::Index k = 0; k < u.rows(); ++k) {
    double ph = std::arg(schur.matrixT()(k, k));
    d(k) = std::exp(cplx(0.0, ph * static_cast<double>(m)));
  }
  return schur.matrixU() * d.asDiagonal() * schur.matrixU().adjoint();
}

}  // namespace ddsim

#pragma once

#include <cstdint>
#include <random>

#include "ddsim/matrix_ops.hpp"
#include "ddsim/states.hpp"

namespace ddsim {

// GUE-style draw, rescaled so that ||H||_op equals target_norm exactly.
// Same seed, same platform -> identical matrix.
inline Mat random_hermitian(Eigen::Index d, double target_norm, std::uint64_t seed) {
  if (target_norm < 0.0)
    throw std::invalid_argument("random_hermitian: negative norm");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  Mat h = hermitize(a);
  if (target_norm == 0.0) return Mat::Zero(d, d);
  double n = op_norm(h);
  if (n == 0.0) throw std::runtime_error("random_hermitian: degenerate draw");
  return (target_norm / n) * h;
}

inline Mat random_matrix(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(g(rng), g(rng));
  return a;
}

inline Vec random_pure(Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Vec psi(d);
  for (Eigen::Index i = 0; i < d; ++i) psi(i) = cplx(g(rng), g(rng));
  return psi / psi.norm();
}

// Wishart-normalized random full-rank state.
inline DensityMatrix random_density(Eigen::Index d, std::uint64_t seed) {
  Mat g = random_matrix(d, seed);
  Mat w = g * g.adjoint();
  return DensityMatrix(Mat(w / w.trace().real()));
}

inline Mat random_unitary(Eigen::Index d, std::uint64_t seed) {
  Eigen::HouseholderQR<Mat> qr(random_matrix(d, seed));
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < d; ++k) {
    cplx rkk = r(k, k);
    q.col(k) *= (std::abs(rkk) < 1e-300) ? cplx(1, 0) : rkk / std::abs(rkk);
  }
  return q;
}

}  // namespace ddsim

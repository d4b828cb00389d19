#pragma once

#include <functional>
#include <numbers>
#include <vector>

#include "ddsim/group.hpp"
#include "ddsim/hamiltonian.hpp"
#include "ddsim/matrix_ops.hpp"

namespace ddsim {

// Leading terms of the expansion U(T) = exp(-i (Omega1 + Omega2 + Omega3 + ...))
// for dU/dt = -i H(t) U:
//   Omega1 =       int_0^T H1 dt1
//   Omega2 = -i/2  int    [H1, H2]                      (t2 < t1)
//   Omega3 = -1/6  int    [H1,[H2,H3]] + [H3,[H2,H1]]   (t3 < t2 < t1)
// action = int ||H||_op dt; the expansion is guaranteed to converge while
// action < pi, reported via convergence_margin.
struct MagnusTerms {
  Mat omega1, omega2, omega3;
  double action = 0.0;
  double convergence_margin = 0.0;  // pi - action; <= 0 flags trouble
  bool converged() const { return convergence_margin > 0.0; }
};

// Samples the generator at q midpoints and sums the ordered-simplex cells.
// Equal-index cells carry the exact piecewise-constant weights (1/2 for one
// coincident pair; commutators of equal arguments vanish), so the rule is
// exact for generators that are constant on the grid cells and second-order
// accurate for smooth ones.
inline MagnusTerms magnus_terms(const std::function<Mat(double)>& gen, double T,
                                int quad_points = 64) {
  if (quad_points < 2) throw std::invalid_argument("magnus_terms: need quad_points >= 2");
  if (T <= 0.0) throw std::invalid_argument("magnus_terms: T must be positive");
  const int q = quad_points;
  const double h = T / q;
  std::vector<Mat> H(q);
  for (int k = 0; k < q; ++k) H[k] = hermitize(gen((k + 0.5) * h));
  const Eigen::Index d = H[0].rows();

  MagnusTerms out;
  Mat g = Mat::Zero(d, d);
  for (const auto& hk : H) g += hk;
  out.omega1 = h * g;
  for (const auto& hk : H) out.action += h * op_norm(hk);
  out.convergence_margin = std::numbers::pi - out.action;

  const cplx mihalf(0.0, -0.5);
  Mat om2 = Mat::Zero(d, d);
  Mat t1 = Mat::Zero(d, d);
  Mat t2 = Mat::Zero(d, d);
  Mat c1 = Mat::Zero(d, d);
  Mat c2 = Mat::Zero(d, d);
  Mat s = Mat::Zero(d, d);  // S_k = sum_{j<k} H_j
  Mat l = Mat::Zero(d, d);  // L_a = sum_{b<a} [H_b, S_b]
  for (int a = 0; a < q; ++a) {
    Mat hs = commutator(H[a], s);
    om2 += hs;
    t1 += commutator(H[a], l);
    c1 += commutator(H[a], hs);
    c2 += commutator(H[a], commutator(H[a], Mat(g - s - H[a])));
    l += hs;
    s += H[a];
  }
  // T2 = sum_a sum_{b<a} [S_b, [H_b, H_a]] needs S_b per pair; redo with a
  // stored prefix list (q small matrices, fine to keep).
  {
    std::vector<Mat> prefix(q);
    Mat acc = Mat::Zero(d, d);
    for (int k = 0; k < q; ++k) {
      prefix[k] = acc;
      acc += H[k];
    }
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < a; ++b)
        t2 += commutator(prefix[b], commutator(H[b], H[a]));
  }
  out.omega2 = mihalf * h * h * om2;
  out.omega3 = (-h * h * h / 6.0) * (t1 + t2 + 0.5 * (c1 + c2));
  out.omega2 = hermitize(out.omega2);
  out.omega3 = hermitize(out.omega3);
  return out;
}

// A_k (h T)^k with the rescaling-domain guard h T < 1.
inline double truncation_bound(int k, double h_norm, double T, double a_k) {
  if (k < 1) throw std::invalid_argument("truncation_bound: k >= 1");
  double x = h_norm * T;
  if (x >= 1.0)
    throw std::invalid_argument("truncation_bound: hT must be < 1, got " + std::to_string(x));
  return a_k * std::pow(x, k);
}

// First-order effective generator of one cycle: literal form
// Pi_G(h_err) + N * (I ⊗ h_bath) and its cycle-average (divided by N). The
// cycle propagator approaches exp(-i tau * literal) = exp(-i T * averaged) as
// tau -> 0 with N fixed.
struct EffectiveFirstOrder {
  Mat literal;
  Mat averaged;
};

inline EffectiveFirstOrder first_order_effective(const DecouplingGroup& g,
                                                 const Mat& h_err_full,
                                                 const Mat& h_bath) {
  const Eigen::Index db = h_bath.rows();
  if (h_err_full.rows() % db != 0)
    throw std::invalid_argument("first_order_effective: dimension mismatch");
  const Eigen::Index ds = h_err_full.rows() / db;
  EffectiveFirstOrder out;
  out.literal = project_group(g, h_err_full) +
                static_cast<double>(g.size()) * tensor(eye(ds), h_bath);
  out.averaged = out.literal / static_cast<double>(g.size());
  return out;
}

}  // namespace ddsim

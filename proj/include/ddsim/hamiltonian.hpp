#pragma once

#include <cstdint>
#include <vector>

#include "ddsim/matrix_ops.hpp"
#include "ddsim/pauli.hpp"
#include "ddsim/rng.hpp"

namespace ddsim {

// System register of n_sys qubits, bath register of n_bath qubits, composite
// ordered system ⊗ bath. h_ctrl acts on the system factor, h_bath on the bath
// factor, h_err on the composite space.
struct SystemBathSplit {
  int n_sys = 1;
  int n_bath = 1;
  Mat h_ctrl;  // dim 2^n_sys
  Mat h_err;   // dim 2^(n_sys+n_bath)
  Mat h_bath;  // dim 2^n_bath

  Eigen::Index dim_sys() const { return 1LL << n_sys; }
  Eigen::Index dim_bath() const { return 1LL << n_bath; }
  Eigen::Index dim() const { return dim_sys() * dim_bath(); }
};

inline Mat embed_system(const Mat& op, Eigen::Index dim_bath) {
  return tensor(op, eye(dim_bath));
}

inline Mat embed_bath(const Mat& op, Eigen::Index dim_sys) {
  return tensor(eye(dim_sys), op);
}

struct HeisenbergCoupling {
  int i = 0, j = 1;
  double strength = 1.0;
};

// Sum_{pairs} J_ij (XiXj + YiYj + ZiZj) on n qubits.
inline Mat heisenberg_control(int n, const std::vector<HeisenbergCoupling>& pairs) {
  Mat h = Mat::Zero(1LL << n, 1LL << n);
  for (const auto& p : pairs) {
    if (p.i == p.j) throw std::invalid_argument("heisenberg_control: i == j");
    for (Axis a : {Axis::X, Axis::Y, Axis::Z})
      h += p.strength * (pauli_on(a, p.i, n) * pauli_on(a, p.j, n));
  }
  return h;
}

inline std::vector<HeisenbergCoupling> nearest_neighbor_chain(int n, double j) {
  std::vector<HeisenbergCoupling> out;
  for (int k = 0; k + 1 < n; ++k) out.push_back({k, k + 1, j});
  return out;
}

struct CouplingTerm {
  int qubit = 0;  // system qubit index
  Axis axis = Axis::Z;
  Mat bath_op;  // Hermitian, dim 2^n_bath
};

// Sum_terms sigma_j^a ⊗ B_{j,a} on system ⊗ bath.
inline Mat linear_coupling(int n_sys, int n_bath, const std::vector<CouplingTerm>& terms) {
  const Eigen::Index db = 1LL << n_bath;
  Mat h = Mat::Zero((1LL << n_sys) * db, (1LL << n_sys) * db);
  for (const auto& t : terms) {
    if (t.bath_op.rows() != db)
      throw std::invalid_argument("linear_coupling: bath op dimension mismatch");
    h += tensor(pauli_on(t.axis, t.qubit, n_sys), hermitize(t.bath_op));
  }
  return h;
}

// All (qubit, axis) pairs with seeded random bath operators of operator norm
// `scale`. Sub-seed is derived per term so the draw set is stable under
// reordering.
inline std::vector<CouplingTerm> random_coupling_terms(int n_sys, int n_bath,
                                                       double scale,
                                                       std::uint64_t seed) {
  std::vector<CouplingTerm> terms;
  int k = 0;
  for (int j = 0; j < n_sys; ++j)
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      terms.push_back({j, a, random_hermitian(1LL << n_bath, scale,
                                              seed * 1000003ULL + k)});
      ++k;
    }
  return terms;
}

// Each system qubit couples to its own bath qubit through one fixed triple of
// single-qubit bath operators, replicated across qubits. Disjoint supports
// commute across j, so ||h_err|| grows exactly linearly in n.
inline std::vector<CouplingTerm> per_qubit_coupling_terms(int n, double scale,
                                                          std::uint64_t seed) {
  Mat bx = random_hermitian(2, scale, seed * 1000003ULL + 1);
  Mat by = random_hermitian(2, scale, seed * 1000003ULL + 2);
  Mat bz = random_hermitian(2, scale, seed * 1000003ULL + 3);
  std::vector<CouplingTerm> terms;
  for (int j = 0; j < n; ++j) {
    auto lift = [&](const Mat& b) {
      Mat op = (j == 0) ? b : eye(1LL << j);
      if (j == 0) {
        if (n > 1) op = tensor(op, eye(1LL << (n - 1)));
        return op;
      }
      op = tensor(op, b);
      if (j + 1 < n) op = tensor(op, eye(1LL << (n - j - 1)));
      return op;
    };
    terms.push_back({j, Axis::X, lift(bx)});
    terms.push_back({j, Axis::Y, lift(by)});
    terms.push_back({j, Axis::Z, lift(bz)});
  }
  return terms;
}

inline Mat random_bath(int n_bath, double target_norm, std::uint64_t seed) {
  return random_hermitian(1LL << n_bath, target_norm, seed);
}

// One identical single-qubit term on each bath qubit; norm exactly n * per-qubit.
inline Mat per_qubit_bath(int n_bath, double per_qubit_norm, std::uint64_t seed) {
  Mat b = random_hermitian(2, per_qubit_norm, seed);
  Mat h = Mat::Zero(1LL << n_bath, 1LL << n_bath);
  for (int j = 0; j < n_bath; ++j) {
    Mat op = (j == 0) ? b : eye(1LL << j);
    if (j == 0) {
      if (n_bath > 1) op = tensor(op, eye(1LL << (n_bath - 1)));
    } else {
      op = tensor(op, b);
      if (j + 1 < n_bath) op = tensor(op, eye(1LL << (n_bath - j - 1)));
    }
    h += op;
  }
  return h;
}

struct StrengthReport {
  double J = 0.0;     // ||h_err||_op on the composite space
  double beta = 0.0;  // ||h_ctrl ⊗ I + I ⊗ h_bath||_op
};

inline StrengthReport strengths(const SystemBathSplit& s) {
  StrengthReport r;
  r.J = op_norm(s.h_err);
  r.beta = op_norm(embed_system(s.h_ctrl, s.dim_bath()) +
                   embed_bath(s.h_bath, s.dim_sys()));
  return r;
}

}  // namespace ddsim

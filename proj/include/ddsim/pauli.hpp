#pragma once

#include "ddsim/matrix_ops.hpp"

namespace ddsim {

enum class Axis { X, Y, Z };

inline Mat sigma(Axis a) {
  Mat s(2, 2);
  switch (a) {
    case Axis::X: s << 0, 1, 1, 0; break;
    case Axis::Y: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case Axis::Z: s << 1, 0, 0, -1; break;
  }
  return s;
}

inline Axis axis_from_char(char c) {
  switch (c) {
    case 'x': case 'X': return Axis::X;
    case 'y': case 'Y': return Axis::Y;
    case 'z': case 'Z': return Axis::Z;
  }
  throw std::invalid_argument(std::string("axis_from_char: bad axis '") + c + "'");
}

// sigma^a on qubit j (0-based, qubit 0 = leftmost tensor factor) of n qubits.
inline Mat pauli_on(Axis a, int j, int n) {
  if (j < 0 || j >= n) throw std::invalid_argument("pauli_on: qubit out of range");
  Mat out = (j == 0) ? sigma(a) : eye(1LL << j);
  if (j == 0) {
    if (n > 1) out = tensor(out, eye(1LL << (n - 1)));
    return out;
  }
  out = tensor(out, sigma(a));
  if (j + 1 < n) out = tensor(out, eye(1LL << (n - j - 1)));
  return out;
}

// Tensor product of single-qubit Paulis over all n qubits, e.g. X = x^{(x)n}.
inline Mat global_pauli(Axis a, int n) {
  Mat out = sigma(a);
  for (int j = 1; j < n; ++j) out = tensor(out, sigma(a));
  return out;
}

// "IXZ" -> I ⊗ sigma_x ⊗ sigma_z. Identity factors spelled 'I'.
inline Mat pauli_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("pauli_string: empty");
  Mat out = eye(1);
  for (char c : s) {
    Mat f = (c == 'I' || c == 'i') ? eye(2) : sigma(axis_from_char(c));
    out = tensor(out, f);
  }
  return out;
}

}  // namespace ddsim

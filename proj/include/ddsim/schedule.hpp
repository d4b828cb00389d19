#pragma once

#include <numbers>
#include <vector>

#include "ddsim/expm_log.hpp"
#include "ddsim/matrix_ops.hpp"
#include "ddsim/pauli.hpp"

namespace ddsim {

// A pulse is stored by its dimensionless phase generator ("area") G, a
// Hermitian system operator. The realized unitary is exp(-iG); at width
// delta > 0 the drive Hamiltonian is G/delta. Zero-width pulses apply exp(-iG)
// instantaneously.
struct Pulse {
  Mat area;

  Mat ideal() const { return expm_hermitian(area, 1.0); }
  Mat hamiltonian(double delta) const {
    if (delta <= 0.0) throw std::invalid_argument("Pulse: width must be positive");
    return area / delta;
  }
};

// N pulses over a cycle of length T = N (tau + delta); pulse j in {1..N}
// occupies [t_j - delta, t_j) with t_j = j (tau + delta), preceded by a free
// stretch of length tau.
struct PulseSchedule {
  std::vector<Pulse> pulses;
  double tau = 0.0;
  double delta = 0.0;

  int n_pulses() const { return static_cast<int>(pulses.size()); }
  double cycle_time() const { return n_pulses() * (tau + delta); }

  void validate() const {
    if (pulses.empty()) throw std::invalid_argument("PulseSchedule: no pulses");
    if (tau <= 0.0) throw std::invalid_argument("PulseSchedule: tau must be positive");
    if (delta < 0.0) throw std::invalid_argument("PulseSchedule: negative delta");
    Eigen::Index d = pulses.front().area.rows();
    for (const auto& p : pulses)
      if (p.area.rows() != d || hermiticity_defect(p.area) > kAlgebraTol)
        throw std::invalid_argument("PulseSchedule: pulse areas must be Hermitian, equal dims");
  }
};

// Absorb the global phase of the cycle product P_N ... P_1 into the first
// pulse so the product is the identity exactly (the group construction needs
// D_1 = I, not a phase). Throws if the product is not proportional to I.
inline void normalize_cycle_phase(PulseSchedule& s) {
  s.validate();
  Eigen::Index d = s.pulses.front().area.rows();
  Mat prod = eye(d);
  for (const auto& p : s.pulses) prod = p.ideal() * prod;
  Mat diff = prod - (prod.trace() / static_cast<double>(d)) * eye(d);
  if (op_norm(diff) > 1e-8)
    throw std::invalid_argument("normalize_cycle_phase: pulse product not proportional to identity");
  double phi = std::arg(prod.trace());
  if (std::abs(phi) > 1e-14)
    s.pulses.front().area += phi * eye(d);  // exp(-i(G + phi I)) = e^{-i phi} exp(-iG)
}

// Universal decoupling cycle: pulse axes (z, x, z, x). Areas are
// (pi/2)(Sum_k sigma_k^a - n I), which realize the exact global Pauli on n
// qubits (no leftover (-i)^n phase); the identity shift keeps the areas
// commuting with anything the bare generators commute with.
inline PulseSchedule universal_schedule(int n, double tau, double delta) {
  if (n < 1) throw std::invalid_argument("universal_schedule: need n >= 1");
  const Eigen::Index d = 1LL << n;
  auto area = [&](Axis a) {
    Mat gen = Mat::Zero(d, d);
    for (int j = 0; j < n; ++j) gen += pauli_on(a, j, n);
    return Mat(0.5 * std::numbers::pi * (gen - double(n) * eye(d)));
  };
  PulseSchedule s;
  s.tau = tau;
  s.delta = delta;
  s.pulses = {Pulse{area(Axis::Z)}, Pulse{area(Axis::X)},
              Pulse{area(Axis::Z)}, Pulse{area(Axis::X)}};
  normalize_cycle_phase(s);
  return s;
}

// Explicit cycle from Pauli-string labels, e.g. {"Z","X","Z","X"} or
// {"XX","ZZ","XX","ZZ"}. Each string must multiply (right to left, first
// pulse rightmost) to a multiple of the identity across the cycle.
inline PulseSchedule schedule_from_pauli_strings(const std::vector<std::string>& labels,
                                                 double tau, double delta) {
  PulseSchedule s;
  s.tau = tau;
  s.delta = delta;
  for (const auto& lab : labels) {
    Mat p = pauli_string(lab);
    s.pulses.push_back(Pulse{Mat(0.5 * std::numbers::pi * (p - eye(p.rows())))});
  }
  normalize_cycle_phase(s);
  return s;
}

}  // namespace ddsim

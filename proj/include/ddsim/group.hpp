#pragma once

#include <vector>

#include "ddsim/matrix_ops.hpp"
#include "ddsim/pauli.hpp"
#include "ddsim/schedule.hpp"

namespace ddsim {

// Unitary frame operators D_j = P_N ... P_j (telescoping products of the
// cycle's pulses), with D_1 = I. elements[j-1] holds D_j.
struct DecouplingGroup {
  std::vector<Mat> elements;

  int size() const { return static_cast<int>(elements.size()); }
  Eigen::Index dim() const { return elements.empty() ? 0 : elements.front().rows(); }

  void validate() const {
    if (elements.empty()) throw std::invalid_argument("DecouplingGroup: empty");
    if (op_norm(elements.front() - eye(dim())) > 1e-8)
      throw std::invalid_argument("DecouplingGroup: D_1 must be the identity");
    for (const auto& d : elements)
      if (unitarity_defect(d) > kUnitaryTol)
        throw std::invalid_argument("DecouplingGroup: element not unitary");
  }
};

inline DecouplingGroup group_from_pulses(const PulseSchedule& s) {
  s.validate();
  const int n = s.n_pulses();
  std::vector<Mat> ideals(n);
  for (int j = 0; j < n; ++j) ideals[j] = s.pulses[j].ideal();
  std::vector<Mat> d(n);
  d[n - 1] = ideals[n - 1];             // D_N = P_N
  for (int j = n - 2; j >= 0; --j) d[j] = d[j + 1] * ideals[j];
  DecouplingGroup g;
  g.elements = std::move(d);
  g.validate();  // rejects schedules whose pulse product is not the identity
  return g;
}

// Clean global-Pauli frame set {I, Z, Y, X} on n qubits, the frames the
// (z,x,z,x) cycle walks through.
inline DecouplingGroup universal_group(int n) {
  DecouplingGroup g;
  g.elements = {eye(1LL << n), global_pauli(Axis::Z, n), global_pauli(Axis::Y, n),
                global_pauli(Axis::X, n)};
  return g;
}

// Unnormalized projector Sum_j D_j A D_j^dag. When A lives on system ⊗ bath
// and the frames on the system alone, the frames are lifted as D ⊗ I.
inline Mat project_group(const DecouplingGroup& g, const Mat& a) {
  require_square(a, "project_group");
  if (g.elements.empty()) throw std::invalid_argument("project_group: empty group");
  const Eigen::Index dg = g.dim();
  if (a.rows() % dg != 0)
    throw std::invalid_argument("project_group: frame dimension must divide operator dimension");
  const Eigen::Index db = a.rows() / dg;
  Mat acc = Mat::Zero(a.rows(), a.cols());
  for (const auto& d : g.elements) {
    Mat lifted = (db == 1) ? d : tensor(d, eye(db));
    acc += lifted * a * lifted.adjoint();
  }
  return acc;
}

inline Mat project_group_avg(const DecouplingGroup& g, const Mat& a) {
  return project_group(g, a) / static_cast<double>(g.size());
}

struct ConditionReport {
  bool ok = false;
  double residual = 0.0;
};

// First-order decoupling condition: ||Pi_G(h_err)||_op below tol.
inline ConditionReport check_decoupling_condition(const DecouplingGroup& g,
                                                  const Mat& h_err,
                                                  double tol = kAlgebraTol) {
  ConditionReport r;
  r.residual = op_norm(project_group(g, h_err));
  r.ok = r.residual <= tol;
  return r;
}

// Pulses must not disturb the logic: max_j ||[area_j, h_ctrl]||_op below tol.
// Areas and drive Hamiltonians differ by 1/delta, so checking areas covers
// every width.
inline ConditionReport check_commutation(const PulseSchedule& s, const Mat& h_ctrl,
                                         double tol = 1e-12) {
  ConditionReport r;
  for (const auto& p : s.pulses)
    r.residual = std::max(r.residual, op_norm(commutator(p.area, h_ctrl)));
  r.ok = r.residual <= tol;
  return r;
}

}  // namespace ddsim

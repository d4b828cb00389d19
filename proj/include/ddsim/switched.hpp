#pragma once

#include <functional>
#include <vector>

#include "ddsim/expm_log.hpp"
#include "ddsim/matrix_ops.hpp"

namespace ddsim {

// One segment of a piecewise-defined Hamiltonian. Constant segments carry the
// matrix directly; time-dependent ones carry a callback evaluated at absolute
// time, integrated with `steps` midpoint substeps.
struct Segment {
  double t_begin = 0.0;
  double t_end = 0.0;
  bool is_constant = true;
  Mat h;
  std::function<Mat(double)> gen;
  int steps = 200;

  double length() const { return t_end - t_begin; }
};

struct SwitchedHamiltonian {
  std::vector<Segment> segments;

  void validate() const {
    if (segments.empty()) throw std::invalid_argument("SwitchedHamiltonian: empty");
    Eigen::Index d = -1;
    for (size_t k = 0; k < segments.size(); ++k) {
      const auto& s = segments[k];
      if (s.length() < 0.0)
        throw std::invalid_argument("SwitchedHamiltonian: segment with negative length");
      if (k > 0 && std::abs(s.t_begin - segments[k - 1].t_end) > 1e-12)
        throw std::invalid_argument("SwitchedHamiltonian: segments not contiguous");
      if (s.is_constant) {
        if (d < 0) d = s.h.rows();
        if (s.h.rows() != d)
          throw std::invalid_argument("SwitchedHamiltonian: dimension mismatch");
      }
    }
  }

  double t_begin() const { return segments.front().t_begin; }
  double t_end() const { return segments.back().t_end; }

  // Generator sampled at absolute time t. Segments are half-open on the
  // right except the last, so boundary samples land in the later segment.
  Mat at(double t) const {
    for (size_t k = 0; k < segments.size(); ++k) {
      const auto& s = segments[k];
      const bool last = (k + 1 == segments.size());
      if (t >= s.t_begin && (t < s.t_end || (last && t <= s.t_end)))
        return s.is_constant ? s.h : s.gen(t);
    }
    throw std::out_of_range("SwitchedHamiltonian::at: time outside all segments");
  }
};

// Midpoint product integrator: U = prod_k exp(-i h H(t_k + h/2)). Exactly
// unitary (product of exact exponentials), second-order accurate in the step.
inline Mat time_ordered_exp(const std::function<Mat(double)>& gen, double t0,
                            double t1, int steps) {
  if (steps < 1) throw std::invalid_argument("time_ordered_exp: steps < 1");
  if (t1 < t0) throw std::invalid_argument("time_ordered_exp: t1 < t0");
  if (t1 == t0) {
    Mat probe = gen(t0);
    return eye(probe.rows());
  }
  const double h = (t1 - t0) / steps;
  Mat u;
  for (int k = 0; k < steps; ++k) {
    Mat step = expm_hermitian(gen(t0 + (k + 0.5) * h), h);
    u = (k == 0) ? step : Mat(step * u);
  }
  return u;
}

// Exact per-segment products for constant generators; time-dependent segments
// delegate to the midpoint integrator. Earliest segment is the rightmost factor.
inline Mat propagate_switched(const SwitchedHamiltonian& sh) {
  sh.validate();
  Mat u;
  bool first = true;
  for (const auto& s : sh.segments) {
    Mat useg;
    if (s.length() == 0.0) continue;
    if (s.is_constant)
      useg = expm_hermitian(s.h, s.length());
    else
      useg = time_ordered_exp(s.gen, s.t_begin, s.t_end, s.steps);
    u = first ? useg : Mat(useg * u);
    first = false;
  }
  if (first) {
    // all segments had zero length
    return eye(sh.segments.front().is_constant ? sh.segments.front().h.rows()
                                               : sh.segments.front().gen(sh.t_begin()).rows());
  }
  return u;
}

}  // namespace ddsim

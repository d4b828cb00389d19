#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "ddsim/expm_log.hpp"
#include "ddsim/scenario.hpp"
#include "ddsim/states.hpp"
#include "ddsim/switched.hpp"

namespace ddsim {

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One decoupling cycle. u_sec is the uncoupled frame propagator at the cycle
// boundary (actual drive amplitude, bath included); u_err = u_sec^dag u_total
// is the cycle's error propagator and phi_e its principal phase. h_free[i] and
// h_pulse[i] are the per-segment effective generators in the rotating frame:
//   exp(-i tau h_free[i])  = V(t)^dag U(free interval i) V(t0)
//   exp(-i delta h_pulse[i]) = P_i^dag V(t)^dag U(pulse window i) V(t0)
// so that  u_err = prod_i [P_i e^{-i delta h_pulse[i]}] [e^{-i tau h_free[i]}].
struct CycleResult {
  Mat u_total, u_sec, u_err, phi_e;
  double phi_e_norm = 0.0;
  std::vector<Mat> h_free;
  std::vector<Mat> h_pulse;
  std::vector<Mat> frames_emb;  // D_i lifted to the composite space
  double T = 0.0, tau = 0.0, delta = 0.0;
  int n_pulses = 0;
  double theta_cycle_actual = 0.0;
  double J = 0.0, beta = 0.0;
};

namespace detail {

// frame propagator at accumulated control angle th and wall-clock time t
inline Mat frame_at(const Assembled& a, double th, double t) {
  Mat us = expm_hermitian(a.r_op, th);
  Mat ub = expm_hermitian(a.split.h_bath, t);
  return tensor(us, ub);
}

}  // namespace detail

inline CycleResult run_cycle(const Assembled& a) {
  const auto& sc = a.sc;
  const Eigen::Index ds = a.split.dim_sys(), db = a.split.dim_bath();
  const int N = a.n_pulses();
  const double tau = sc.tau, delta = sc.delta;
  const double T = a.cycle_time();

  CycleResult r;
  r.T = T;
  r.tau = tau;
  r.delta = delta;
  r.n_pulses = N;
  r.J = a.strength.J;
  r.beta = a.strength.beta;
  if (T * r.J >= std::numbers::pi)
    throw ConvergenceError("run_cycle: T*J = " + std::to_string(T * r.J) +
                           " outside the convergence domain (< pi)");

  const Mat h_ctrl_emb = embed_system(a.split.h_ctrl, db);
  const Mat h_bath_emb = embed_bath(a.split.h_bath, ds);
  const Mat h_free_gen = h_ctrl_emb + a.split.h_err + h_bath_emb;
  const Mat u_free = expm_hermitian(h_free_gen, tau);

  std::vector<Mat> u_pulse(N), p_emb(N);
  for (int i = 0; i < N; ++i) {
    p_emb[i] = embed_system(a.schedule.pulses[i].ideal(), db);
    if (delta > 0.0) {
      Mat gen = embed_system(a.schedule.pulses[i].hamiltonian(delta), db) +
                a.split.h_err + h_bath_emb;
      if (sc.ctrl_during_pulses) gen += h_ctrl_emb;
      u_pulse[i] = expm_hermitian(gen, delta);
    } else {
      u_pulse[i] = p_emb[i];
    }
  }

  for (const auto& d : a.group.elements) r.frames_emb.push_back(embed_system(d, db));

  // walk the cycle, collecting segment logs in the rotating frame
  r.h_free.resize(N);
  r.h_pulse.resize(N);
  Mat u_acc = eye(ds * db);
  double th_acc = 0.0, t_acc = 0.0;
  Mat v_prev = detail::frame_at(a, th_acc, t_acc);
  for (int i = 0; i < N; ++i) {
    th_acc += a.lambda_actual * tau;
    t_acc += tau;
    Mat v1 = detail::frame_at(a, th_acc, t_acc);
    r.h_free[i] = unitary_log(Mat(v1.adjoint() * u_free * v_prev)) / tau;
    u_acc = u_free * u_acc;
    if (delta > 0.0) {
      if (sc.ctrl_during_pulses) th_acc += a.lambda_actual * delta;
      t_acc += delta;
      Mat v2 = detail::frame_at(a, th_acc, t_acc);
      Mat w = p_emb[i].adjoint() * v2.adjoint() * u_pulse[i] * v1;
      r.h_pulse[i] = unitary_log(w) / delta;
      v_prev = v2;
    } else {
      r.h_pulse[i] = Mat::Zero(ds * db, ds * db);
      v_prev = v1;
    }
    u_acc = u_pulse[i] * u_acc;
  }

  r.theta_cycle_actual = th_acc;
  r.u_total = u_acc;
  r.u_sec = v_prev;  // frame at the cycle boundary
  r.u_err = r.u_sec.adjoint() * r.u_total;
  r.phi_e = unitary_log(r.u_err);
  r.phi_e_norm = op_norm(r.phi_e);
  return r;
}

// Periodic repetition. The sequence is cycle-periodic, so each cycle has the
// same error propagator in its own rotating frame; u_err_pdd composes those
// per-cycle errors and satisfies u_err_pdd = u_err^m up to roundoff. The
// end-to-end frame differs: u_err_true = u_sec(mT)^dag u_total(mT) picks up
// frame conjugations between cycles. Its phase norm is still bounded by
// m * ||phi_e|| (each conjugated factor has the same phase norm), which is
// what the long-run bound controls.
struct PddResult {
  CycleResult cycle;
  int m = 1;
  double T_long = 0.0;
  Mat u_err_pdd, phi_pdd;
  double phi_pdd_norm = 0.0;
  Mat u_total_long, u_sec_long, u_err_true;
  Mat phi_true;               // empty when the log hit the branch cut
  double phi_true_norm = -1.0;  // -1 when unavailable
  std::vector<double> per_cycle_dev;  // ||E_j - E_1||, traced while m <= cap
};

inline PddResult run_pdd(const Assembled& a, int trace_cycles_cap = 64) {
  PddResult r;
  r.cycle = run_cycle(a);
  r.m = a.sc.m;
  r.T_long = r.m * r.cycle.T;

  const Mat& e1 = r.cycle.u_err;
  const Mat& v = r.cycle.u_sec;
  if (r.m <= trace_cycles_cap) {
    // accumulate the long product and re-extract each cycle's factor, so the
    // per-cycle comparison exercises an independent floating-point path
    Mat w_prev = eye(e1.rows());
    Mat w_acc = eye(e1.rows());
    Mat err_acc = eye(e1.rows());
    for (int j = 0; j < r.m; ++j) {
      w_acc = r.cycle.u_total * w_acc;
      Mat e_j = v.adjoint() * (w_acc * w_prev.adjoint());
      r.per_cycle_dev.push_back(op_norm(Mat(e_j - e1)));
      err_acc = e_j * err_acc;
      w_prev = w_acc;
    }
    r.u_err_pdd = err_acc;
    r.u_total_long = w_acc;
  } else {
    r.u_err_pdd = unitary_power(e1, r.m);
    r.u_total_long = unitary_power(r.cycle.u_total, r.m);
  }
  r.phi_pdd = unitary_log(r.u_err_pdd);
  r.phi_pdd_norm = op_norm(r.phi_pdd);

  r.u_sec_long = detail::frame_at(a, r.m * r.cycle.theta_cycle_actual, r.T_long);
  r.u_err_true = r.u_sec_long.adjoint() * r.u_total_long;
  try {
    r.phi_true = unitary_log(r.u_err_true);
    r.phi_true_norm = op_norm(r.phi_true);
  } catch (const BranchCutError&) {
    r.phi_true_norm = -1.0;
  }
  return r;
}

// Distances among the actual run, the uncoupled (noisy-control) reference and
// the ideal gate. d_dd compares actual vs uncoupled, d_id uncoupled vs ideal,
// d_tot actual vs ideal; d_s and f_q act on the reduced system states.
struct DistanceRecord {
  double d_dd = 0.0, d_id = 0.0, d_tot = 0.0, d_s = 0.0, f_q = 1.0;
};

inline DistanceRecord final_state_distances(const Assembled& a, const PddResult& run) {
  const Eigen::Index db = a.split.dim_bath();
  const Mat rho0 = tensor(a.rho_s0, a.rho_b0);
  const Mat u_ideal =
      tensor(expm_hermitian(a.r_op, a.theta_total_ideal),
             expm_hermitian(a.split.h_bath, run.T_long));

  const Mat rho_t = run.u_total_long * rho0 * run.u_total_long.adjoint();
  const Mat rho_ref = run.u_sec_long * rho0 * run.u_sec_long.adjoint();
  const Mat rho_ideal = u_ideal * rho0 * u_ideal.adjoint();

  DistanceRecord d;
  d.d_dd = trace_distance(rho_t, rho_ref);
  d.d_id = trace_distance(rho_ref, rho_ideal);
  d.d_tot = trace_distance(rho_t, rho_ideal);
  Mat rs_t = partial_trace_bath(rho_t, db);
  Mat rs_ideal = partial_trace_bath(rho_ideal, db);
  d.d_s = trace_distance(rs_t, rs_ideal);
  d.f_q = fidelity(hermitize(rs_t), hermitize(rs_ideal));
  return d;
}

}  // namespace ddsim

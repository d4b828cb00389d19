#pragma once

#include <cmath>
#include <optional>

#include "ddsim/cycle.hpp"
#include "ddsim/group.hpp"
#include "ddsim/magnus.hpp"
#include "ddsim/switched.hpp"

namespace ddsim {

constexpr double kMarginTol = 1e-9;  // numerical slack when asserting bounds

// Calibrated prefactors. The inequalities only guarantee existence of finite
// constants; concrete values come from the calibration run (see calibrate.hpp)
// and carry its safety factors.
struct BoundConstants {
  double c = 1.0;        // second-order cycle constant
  double d = 1.0;        // per-segment curvature constant
  double a2 = 1.0;       // first-order expansion remainder constant
  double c_prime = 1.0;  // scaling-law prefactor (informational)
};

// (e^x - 1)/x - 1, switching to the series x/2 + x^2/6 + x^3/24 for small x
// to dodge cancellation. Monotone increasing, 0 at x = 0.
inline double em1_over_x_minus_1(double x) {
  if (x < 0.0) throw std::invalid_argument("em1_over_x_minus_1: negative argument");
  if (x < 1e-3) return x / 2.0 + x * x / 6.0 + x * x * x / 24.0;
  return (std::expm1(x)) / x - 1.0;
}

// ||e^{-iA} B e^{iA} - B|| <= ||B|| min[2, e^{2||A||} - 1], with the sharper
// 2 ||B|| (e-1) ||A|| available when 2||A|| <= 1.
struct Lemma2Report {
  double actual = 0.0;
  double bound = 0.0;
  // linear small-argument form 2||B||(e-1)||A||, valid when 2||A|| <= 1; it is
  // a simplification of the exponential bound (weaker, never tighter)
  std::optional<double> linearized;
  double margin = 0.0;  // bound - actual
};

inline Lemma2Report lemma2_check(const Mat& a, const Mat& b, NormKind kind) {
  Lemma2Report r;
  double an = op_norm(a);
  double bn = norm(b, kind);
  r.actual = norm(Mat(adjoint_map(a, b) - b), kind);
  r.bound = bn * std::min(2.0, std::expm1(2.0 * an));
  if (2.0 * an <= 1.0) r.linearized = 2.0 * bn * (std::numbers::e - 1.0) * an;
  r.margin = r.bound - r.actual;
  return r;
}

inline double lemma2_value(double b_norm, double a_norm) {
  return b_norm * std::min(2.0, std::expm1(2.0 * a_norm));
}

// Additive-perturbation containment: with U generated by h0 + v(t) and U0 by
// h0 alone, the effective generator of U0^dag U has norm at most the running
// mean of ||v||, which in turn is at most sup ||v||.
struct Lemma3Report {
  double h_eff_norm = 0.0;
  double v_mean = 0.0;
  double v_sup = 0.0;
  double margin = 0.0;  // v_mean - h_eff_norm
};

inline Lemma3Report lemma3_check(const Mat& h0, const std::function<Mat(double)>& v,
                                 double T, int steps = 400) {
  Lemma3Report r;
  Mat u = time_ordered_exp([&](double t) { return Mat(h0 + v(t)); }, 0.0, T, steps);
  Mat u0 = expm_hermitian(h0, T);
  Mat h_eff = unitary_log(Mat(u0.adjoint() * u)) / T;
  r.h_eff_norm = op_norm(h_eff);
  double acc = 0.0;
  const double h = T / steps;
  for (int k = 0; k < steps; ++k) {
    double nv = op_norm(v((k + 0.5) * h));
    acc += h * nv;
    r.v_sup = std::max(r.v_sup, nv);
  }
  r.v_mean = acc / T;
  r.margin = r.v_mean - r.h_eff_norm;
  return r;
}

// Single-cycle error-phase bound: c (J T)^2 + J Delta + J T min[1, f(2 beta T)]
// (Delta = total pulse width per cycle).
inline double phi_e_bound(double J, double beta, double T, double Delta,
                          const BoundConstants& k) {
  return k.c * J * J * T * T + J * Delta +
         J * T * std::min(1.0, em1_over_x_minus_1(2.0 * beta * T));
}

// m-cycle bound; reduces to phi_e_bound at m = 1 with Delta = N delta.
inline double pdd_bound(double J, double beta, double T_long, int m, int n_pulses_long,
                        double delta, const BoundConstants& k) {
  if (m < 1) throw std::invalid_argument("pdd_bound: m >= 1");
  double T = T_long / m;
  return k.c * J * J * T_long * T_long / m + n_pulses_long * J * delta +
         J * T_long * std::min(1.0, em1_over_x_minus_1(2.0 * beta * T));
}

// Small-parameter shape of the m-cycle bound at delta = 0.
inline double pdd_approx(double J, double beta, double T_cycle, int m,
                         const BoundConstants& k) {
  return m * (k.c * J * J + J * beta) * T_cycle * T_cycle;
}

// State-space consequence of the error phase.
struct DddChainReport {
  double bound = 0.0;
  std::optional<double> linearized;  // 2 ||phi|| when 2 ||phi|| <= 1 (weaker form)
  double margin = 0.0;
};

inline DddChainReport d_dd_chain(double d_dd, double phi_norm) {
  DddChainReport r;
  r.bound = std::min(1.0, 0.5 * std::expm1(2.0 * phi_norm));
  if (2.0 * phi_norm <= 1.0) r.linearized = 2.0 * phi_norm;
  r.margin = r.bound - d_dd;
  return r;
}

struct FidelityFloorReport {
  double floor = 0.0;
  bool vacuous = false;
  double margin = 0.0;
};

inline FidelityFloorReport fidelity_floor(double f_q, double d_id, double phi_norm) {
  FidelityFloorReport r;
  r.floor = 1.0 - d_id - std::min(1.0, 0.5 * std::expm1(2.0 * phi_norm));
  r.vacuous = r.floor < 0.0;
  r.margin = f_q - r.floor;
  return r;
}

struct UndecSeries {
  Mat phi;
  double norm = 0.0;
  double tail = 0.0;
  double norm_upper = 0.0;
  int terms = 0;
};

// First-order undecoupled phase: the frame-dressing of the coupling summed
// over free intervals,
//   phi_undec = sum_i D_i [ tau (W_i^dag h_err W_i - h_err)
//                         + W_i^dag (sum_{n>=1} i^n tau^{n+1}/(n+1)! [_n H_sec, h_err]) W_i ] D_i^dag
// with W_i the exact accumulated frame at the start of free interval i (the
// control angle can stall during pulse windows, so W_i is built from the
// bookkept angle rather than wall time). The inner series is truncated with a
// certified tail: each term norm is at most J (2 beta)^n tau^{n+1}/(n+1)! per
// interval.
inline UndecSeries undecoupled_series(const Assembled& a, const CycleResult& cyc,
                                      double term_cutoff = 1e-15) {
  const Eigen::Index ds = a.split.dim_sys();
  const Eigen::Index db = a.split.dim_bath();
  const Eigen::Index dim = ds * db;
  const Mat h_sec = embed_system(a.split.h_ctrl, db) + embed_bath(a.split.h_bath, ds);
  const double beta = a.strength.beta, J = a.strength.J;
  const double tau = cyc.tau, delta = cyc.delta;
  const int N = cyc.n_pulses;
  const double ctrl_dt = a.sc.ctrl_during_pulses ? tau + delta : tau;

  UndecSeries out;
  out.phi = Mat::Zero(dim, dim);

  std::vector<Mat> w(N), dressed(N);
  for (int i = 0; i < N; ++i) {
    const double th0 = a.lambda_actual * i * ctrl_dt;
    const double t0 = i * (tau + delta);
    w[i] = tensor(expm_hermitian(a.r_op, th0), expm_hermitian(a.split.h_bath, t0));
    dressed[i] = w[i].adjoint() * a.split.h_err * w[i];
    Mat base = tau * (dressed[i] - a.split.h_err);
    out.phi += cyc.frames_emb[i] * base * cyc.frames_emb[i].adjoint();
  }

  auto tail_from = [&](int n0) {
    // N J sum_{n > n0} (2 beta)^n tau^{n+1} / (n+1)!
    double t = J * tau;  // value at n = 0
    for (int n = 1; n <= n0; ++n) t *= 2.0 * beta * tau / (n + 1.0);
    double tail = 0.0;
    for (int n = n0 + 1; n < 500; ++n) {
      t *= 2.0 * beta * tau / (n + 1.0);
      tail += t;
      if (t < 1e-300) break;
    }
    return N * tail;
  };

  Mat nested = a.split.h_err;  // [_n H_sec, h_err]
  double fact = 1.0;           // (n+1)! running
  cplx ipow(1.0, 0.0);
  double taupow = tau;  // tau^{n+1}
  for (int n = 1; n <= 200; ++n) {
    nested = commutator(h_sec, nested);
    ipow *= cplx(0.0, 1.0);
    fact *= (n + 1.0);
    taupow *= tau;
    const cplx g = ipow * (taupow / fact);
    for (int i = 0; i < N; ++i) {
      Mat inner = w[i].adjoint() * ((g * nested) * w[i]);
      out.phi += cyc.frames_emb[i] * inner * cyc.frames_emb[i].adjoint();
    }
    out.terms = n;
    out.tail = tail_from(n);
    if (out.tail < term_cutoff || beta == 0.0) break;
  }
  out.phi = hermitize(out.phi);
  out.norm = op_norm(out.phi);
  out.norm_upper = out.norm + out.tail;
  return out;
}

// Splits the first-order cycle phase into pulse, decoupled, undecoupled and
// curvature parts, each with the bound it must respect:
//   phi_pulse = delta sum_i D_i h_pulse_i D_i^dag          <= (N delta) J
//   phi_dec   = tau Pi_G(h_err)                            (0 when decoupled)
//   phi_undec (series)                                     <= J T min[1, f(2 beta T)]
//   c_resid   = phi_free - phi_dec - phi_undec             <= N d (tau J)^2
struct PhaseDecomposition {
  Mat phi_pulse, phi_free, phi_dec, phi_undec, c_resid;
  double pulse_norm = 0.0, free_norm = 0.0, dec_norm = 0.0;
  double undec_norm = 0.0, undec_norm_upper = 0.0, c_norm = 0.0;
  double pulse_bound = 0.0, free_bound = 0.0, undec_bound = 0.0, c_bound = 0.0;
};

inline PhaseDecomposition phase_decomposition(const Assembled& a, const CycleResult& cyc,
                                              const BoundConstants& k) {
  const Eigen::Index dim = a.split.dim();
  const double J = a.strength.J, beta = a.strength.beta;
  const double tau = cyc.tau, delta = cyc.delta, T = cyc.T;
  const int N = cyc.n_pulses;

  PhaseDecomposition p;
  p.phi_pulse = Mat::Zero(dim, dim);
  p.phi_free = Mat::Zero(dim, dim);
  for (int i = 0; i < N; ++i) {
    const Mat& d_i = cyc.frames_emb[i];
    p.phi_pulse += delta * (d_i * cyc.h_pulse[i] * d_i.adjoint());
    p.phi_free += tau * (d_i * cyc.h_free[i] * d_i.adjoint());
  }
  p.phi_dec = tau * project_group(a.group, a.split.h_err);
  UndecSeries u = undecoupled_series(a, cyc);
  p.phi_undec = u.phi;
  p.c_resid = p.phi_free - p.phi_dec - p.phi_undec;

  p.pulse_norm = op_norm(p.phi_pulse);
  p.free_norm = op_norm(p.phi_free);
  p.dec_norm = op_norm(p.phi_dec);
  p.undec_norm = u.norm;
  p.undec_norm_upper = u.norm_upper;
  p.c_norm = op_norm(p.c_resid);

  p.pulse_bound = N * delta * J;
  p.free_bound = N * tau * J;  // "do nothing" cap on the whole free phase
  p.undec_bound = J * T * std::min(1.0, em1_over_x_minus_1(2.0 * beta * T));
  p.c_bound = N * k.d * tau * tau * J * J;
  return p;
}

}  // namespace ddsim

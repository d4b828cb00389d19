#pragma once

#include <charconv>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "ddsim/bounds.hpp"
#include "ddsim/cycle.hpp"

namespace ddsim {

using json = nlohmann::ordered_json;

// Shortest decimal string that round-trips the exact double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Flat record of one run: scenario echo, measured quantities, bound values
// and margins (bound minus measured; negative beyond kMarginTol means a
// violated inequality). Field order below is the CSV schema and is stable.
struct BoundReport {
  // scenario echo
  long long seed = 0;
  int n_sys = 0, n_bath = 0, n_pulses = 0, m = 1;
  double tau = 0.0, delta = 0.0, theta = 0.0, control_noise = 0.0;
  std::string gate, group;
  // strengths and clocks
  double J = 0.0, beta = 0.0, T_cycle = 0.0, T_long = 0.0, tj_cycle = 0.0;
  // measured
  double phi_e_norm = 0.0, phi_pdd_norm = 0.0, phi_true_norm = -1.0;
  double phi_pulse_norm = 0.0, phi_free_norm = 0.0, phi_dec_norm = 0.0;
  double phi_undec_norm = 0.0, phi_undec_upper = 0.0, c_resid_norm = 0.0;
  double dd_residual = 0.0, commutation_residual = 0.0;
  double seg_free_max = 0.0, seg_pulse_max = 0.0;
  double power_dev = 0.0, cycle_dev_max = 0.0;
  double d_dd = 0.0, d_id = 0.0, d_tot = 0.0, d_s = 0.0, f_q = 1.0;
  // bounds
  double bound_phi_e = 0.0, bound_pdd = 0.0, bound_pdd_approx = 0.0;
  double bound_pulse = 0.0, bound_free = 0.0, bound_undec = 0.0, bound_c = 0.0;
  double bound_lemma2 = 0.0, actual_lemma2 = 0.0;
  double bound_d_dd = 0.0, fid_floor = 0.0;
  bool fid_vacuous = false;
  // margins
  double margin_phi_e = 0.0, margin_pdd = 0.0, margin_pulse = 0.0;
  double margin_free = 0.0, margin_undec = 0.0, margin_c = 0.0;
  double margin_lemma2 = 0.0, margin_lemma3 = 0.0, margin_d_dd = 0.0;
  double margin_fid = 0.0, margin_frame = 0.0, margin_dtot = 0.0, margin_ds = 0.0;
  double margin_min = 0.0;
  bool all_pass = false;
};

inline BoundReport build_report(const Assembled& a, const PddResult& run,
                                const DistanceRecord& dist, const BoundConstants& k) {
  const auto& sc = a.sc;
  const CycleResult& cyc = run.cycle;
  BoundReport r;
  r.seed = static_cast<long long>(sc.seed);
  r.n_sys = sc.n_sys;
  r.n_bath = sc.n_bath;
  r.n_pulses = cyc.n_pulses;
  r.m = run.m;
  r.tau = sc.tau;
  r.delta = sc.delta;
  r.theta = a.theta_total_ideal;
  r.control_noise = sc.control_noise;
  r.gate = gate_name(sc.gate);
  r.group = sc.pulse_labels.empty() ? "universal" : "explicit";
  r.J = a.strength.J;
  r.beta = a.strength.beta;
  r.T_cycle = cyc.T;
  r.T_long = run.T_long;
  r.tj_cycle = cyc.T * r.J;

  r.phi_e_norm = cyc.phi_e_norm;
  r.phi_pdd_norm = run.phi_pdd_norm;
  r.phi_true_norm = run.phi_true_norm;

  PhaseDecomposition pd = phase_decomposition(a, cyc, k);
  r.phi_pulse_norm = pd.pulse_norm;
  r.phi_free_norm = pd.free_norm;
  r.phi_dec_norm = pd.dec_norm;
  r.phi_undec_norm = pd.undec_norm;
  r.phi_undec_upper = pd.undec_norm_upper;
  r.c_resid_norm = pd.c_norm;

  r.dd_residual = check_decoupling_condition(a.group, a.split.h_err).residual;
  r.commutation_residual = check_commutation(a.schedule, a.split.h_ctrl).residual;

  for (const auto& h : cyc.h_free) r.seg_free_max = std::max(r.seg_free_max, op_norm(h));
  if (sc.delta > 0.0)
    for (const auto& h : cyc.h_pulse)
      r.seg_pulse_max = std::max(r.seg_pulse_max, op_norm(h));

  // cycle periodicity and the power identity
  for (double dev : run.per_cycle_dev) r.cycle_dev_max = std::max(r.cycle_dev_max, dev);
  if (!run.per_cycle_dev.empty()) {
    Mat pw = eye(cyc.u_err.rows());
    for (int j = 0; j < run.m; ++j) pw = cyc.u_err * pw;
    r.power_dev = op_norm(Mat(run.u_err_pdd - pw));
  }

  r.d_dd = dist.d_dd;
  r.d_id = dist.d_id;
  r.d_tot = dist.d_tot;
  r.d_s = dist.d_s;
  r.f_q = dist.f_q;

  r.bound_phi_e = phi_e_bound(r.J, r.beta, r.T_cycle, r.n_pulses * r.delta, k);
  r.bound_pdd = pdd_bound(r.J, r.beta, r.T_long, r.m, r.m * r.n_pulses, r.delta, k);
  r.bound_pdd_approx = pdd_approx(r.J, r.beta, r.T_cycle, r.m, k);
  r.bound_pulse = pd.pulse_bound;
  r.bound_free = pd.free_bound;
  r.bound_undec = pd.undec_bound;
  r.bound_c = pd.c_bound;

  r.actual_lemma2 = 2.0 * dist.d_dd;  // ||U rho U^dag - rho||_1, trace norm of a state
  r.bound_lemma2 = lemma2_value(1.0, r.phi_pdd_norm);
  DddChainReport chain = d_dd_chain(dist.d_dd, r.phi_pdd_norm);
  r.bound_d_dd = chain.bound;
  FidelityFloorReport ff = fidelity_floor(dist.f_q, dist.d_id, r.phi_pdd_norm);
  r.fid_floor = ff.floor;
  r.fid_vacuous = ff.vacuous;

  r.margin_phi_e = r.bound_phi_e - r.phi_e_norm;
  r.margin_pdd = r.bound_pdd - r.phi_pdd_norm;
  r.margin_pulse = r.bound_pulse - r.phi_pulse_norm;
  r.margin_free = r.bound_free - r.phi_free_norm;
  r.margin_undec = r.bound_undec - r.phi_undec_upper;
  r.margin_c = r.bound_c - r.c_resid_norm;
  r.margin_lemma2 = r.bound_lemma2 - r.actual_lemma2;
  r.margin_lemma3 = r.J - std::max(r.seg_free_max, r.seg_pulse_max);
  r.margin_d_dd = chain.margin;
  r.margin_fid = ff.margin;
  // the composed-error norm dominates the end-to-end frame error only while
  // m ||phi_e|| stays below the branch cut; past it the comparison is vacuous
  const bool frame_comparable =
      r.phi_true_norm >= 0.0 && r.m * r.phi_e_norm < std::numbers::pi - kBranchCutTol;
  r.margin_frame = frame_comparable ? r.phi_pdd_norm - r.phi_true_norm : 0.0;
  r.margin_dtot = (r.d_dd + r.d_id) - r.d_tot;
  r.margin_ds = r.d_tot - r.d_s;

  r.margin_min = r.margin_phi_e;
  for (double v : {r.margin_pdd, r.margin_pulse, r.margin_free, r.margin_undec,
                   r.margin_c, r.margin_lemma2, r.margin_lemma3, r.margin_d_dd,
                   r.margin_fid, r.margin_frame, r.margin_dtot, r.margin_ds})
    r.margin_min = std::min(r.margin_min, v);
  r.all_pass = r.margin_min >= -kMarginTol &&
               (run.per_cycle_dev.empty() || r.power_dev <= 1e-8);
  return r;
}

// Stable CSV schema; every report field appears exactly once, in this order.
inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {
      "seed", "n_sys", "n_bath", "n_pulses", "m", "tau", "delta", "theta",
      "control_noise", "gate", "group", "J", "beta", "T_cycle", "T_long",
      "tj_cycle", "phi_e_norm", "phi_pdd_norm", "phi_true_norm",
      "phi_pulse_norm", "phi_free_norm", "phi_dec_norm", "phi_undec_norm",
      "phi_undec_upper", "c_resid_norm", "dd_residual", "commutation_residual",
      "seg_free_max", "seg_pulse_max", "power_dev", "cycle_dev_max", "d_dd",
      "d_id", "d_tot", "d_s", "f_q", "bound_phi_e", "bound_pdd",
      "bound_pdd_approx", "bound_pulse", "bound_free", "bound_undec", "bound_c",
      "bound_lemma2", "actual_lemma2", "bound_d_dd", "fid_floor", "fid_vacuous",
      "margin_phi_e", "margin_pdd", "margin_pulse", "margin_free",
      "margin_undec", "margin_c", "margin_lemma2", "margin_lemma3",
      "margin_d_dd", "margin_fid", "margin_frame", "margin_dtot", "margin_ds",
      "margin_min", "all_pass"};
  return cols;
}

inline json report_to_json(const BoundReport& r) {
  json j;
  j["seed"] = r.seed;
  j["n_sys"] = r.n_sys;
  j["n_bath"] = r.n_bath;
  j["n_pulses"] = r.n_pulses;
  j["m"] = r.m;
  j["tau"] = r.tau;
  j["delta"] = r.delta;
  j["theta"] = r.theta;
  j["control_noise"] = r.control_noise;
  j["gate"] = r.gate;
  j["group"] = r.group;
  j["J"] = r.J;
  j["beta"] = r.beta;
  j["T_cycle"] = r.T_cycle;
  j["T_long"] = r.T_long;
  j["tj_cycle"] = r.tj_cycle;
  j["phi_e_norm"] = r.phi_e_norm;
  j["phi_pdd_norm"] = r.phi_pdd_norm;
  j["phi_true_norm"] = r.phi_true_norm;
  j["phi_pulse_norm"] = r.phi_pulse_norm;
  j["phi_free_norm"] = r.phi_free_norm;
  j["phi_dec_norm"] = r.phi_dec_norm;
  j["phi_undec_norm"] = r.phi_undec_norm;
  j["phi_undec_upper"] = r.phi_undec_upper;
  j["c_resid_norm"] = r.c_resid_norm;
  j["dd_residual"] = r.dd_residual;
  j["commutation_residual"] = r.commutation_residual;
  j["seg_free_max"] = r.seg_free_max;
  j["seg_pulse_max"] = r.seg_pulse_max;
  j["power_dev"] = r.power_dev;
  j["cycle_dev_max"] = r.cycle_dev_max;
  j["d_dd"] = r.d_dd;
  j["d_id"] = r.d_id;
  j["d_tot"] = r.d_tot;
  j["d_s"] = r.d_s;
  j["f_q"] = r.f_q;
  j["bound_phi_e"] = r.bound_phi_e;
  j["bound_pdd"] = r.bound_pdd;
  j["bound_pdd_approx"] = r.bound_pdd_approx;
  j["bound_pulse"] = r.bound_pulse;
  j["bound_free"] = r.bound_free;
  j["bound_undec"] = r.bound_undec;
  j["bound_c"] = r.bound_c;
  j["bound_lemma2"] = r.bound_lemma2;
  j["actual_lemma2"] = r.actual_lemma2;
  j["bound_d_dd"] = r.bound_d_dd;
  j["fid_floor"] = r.fid_floor;
  j["fid_vacuous"] = r.fid_vacuous;
  j["margin_phi_e"] = r.margin_phi_e;
  j["margin_pdd"] = r.margin_pdd;
  j["margin_pulse"] = r.margin_pulse;
  j["margin_free"] = r.margin_free;
  j["margin_undec"] = r.margin_undec;
  j["margin_c"] = r.margin_c;
  j["margin_lemma2"] = r.margin_lemma2;
  j["margin_lemma3"] = r.margin_lemma3;
  j["margin_d_dd"] = r.margin_d_dd;
  j["margin_fid"] = r.margin_fid;
  j["margin_frame"] = r.margin_frame;
  j["margin_dtot"] = r.margin_dtot;
  j["margin_ds"] = r.margin_ds;
  j["margin_min"] = r.margin_min;
  j["all_pass"] = r.all_pass;
  return j;
}

inline std::string report_csv_header() {
  std::string out;
  const auto& cols = report_columns();
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ",";
    out += cols[i];
  }
  return out;
}

inline std::string report_csv_row(const BoundReport& r) {
  json j = report_to_json(r);
  std::string out;
  const auto& cols = report_columns();
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ",";
    const json& v = j.at(cols[i]);
    if (v.is_string())
      out += v.get<std::string>();
    else if (v.is_boolean())
      out += v.get<bool>() ? "1" : "0";
    else if (v.is_number_integer())
      out += std::to_string(v.get<long long>());
    else
      out += format_double(v.get<double>());
  }
  return out;
}

}  // namespace ddsim

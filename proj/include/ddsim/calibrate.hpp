#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>

#include "ddsim/bounds.hpp"
#include "ddsim/cycle.hpp"
#include "ddsim/magnus.hpp"
#include "ddsim/rng.hpp"
#include "ddsim/switched.hpp"

namespace ddsim {

// Empirical constants are fit as safety_factor * max(required value) over a
// structured scenario family, then frozen. The family spans the parameter
// ranges the suite exercises (sizes, intervals, pulse widths, control on and
// off, shared-coupler scaling models) but draws from a reserved seed block so
// no fitted instance is ever reused as a test instance.
struct CalibrationResult {
  BoundConstants k;
  int runs = 0;
  std::uint64_t seed_lo = 0, seed_hi = 0;
  double max_req_c = 0.0, max_req_d = 0.0, max_req_a2 = 0.0;
  double safety_c = 1.5, safety_d = 1.5, safety_a2 = 1.2;
  std::string family;
};

namespace detail {

inline void calibrate_one(const SimulationScenario& sc, CalibrationResult& out) {
  Assembled a = assemble(sc);
  CycleResult cyc = run_cycle(a);
  const double J = a.strength.J, beta = a.strength.beta;
  const double T = cyc.T, Delta = cyc.n_pulses * cyc.delta;
  if (J <= 0.0) return;

  const double undec_cap = J * T * std::min(1.0, em1_over_x_minus_1(2.0 * beta * T));
  const double req_c = (cyc.phi_e_norm - J * Delta - undec_cap) / (J * T * J * T);
  out.max_req_c = std::max(out.max_req_c, std::max(0.0, req_c));

  PhaseDecomposition pd = phase_decomposition(a, cyc, BoundConstants{});
  const double tauJ = cyc.tau * J;
  const double req_d = pd.c_norm / (cyc.n_pulses * tauJ * tauJ);
  out.max_req_d = std::max(out.max_req_d, std::max(0.0, req_d));
  ++out.runs;
}

inline void calibrate_magnus_one(std::uint64_t seed, double span, double scale,
                                 CalibrationResult& out) {
  // random piecewise-constant generator, three segments
  const Eigen::Index dim = 4;
  std::vector<Segment> segs;
  double t = 0.0;
  for (int i = 0; i < 3; ++i) {
    Segment s;
    s.t_begin = t;
    s.t_end = t + span / 3.0;
    s.is_constant = true;
    s.h = random_hermitian(dim, scale, seed * 17 + static_cast<std::uint64_t>(i));
    segs.push_back(s);
    t = s.t_end;
  }
  SwitchedHamiltonian sw{segs};
  Mat u = propagate_switched(sw);
  auto gen = [&](double tt) { return sw.at(tt); };
  MagnusTerms mg = magnus_terms(gen, span, 96);
  double h_sup = 0.0;
  for (const auto& s : segs) h_sup = std::max(h_sup, op_norm(s.h));
  const double hT = h_sup * span;
  const double rem = op_norm(Mat(unitary_log(u) - mg.omega1));
  out.max_req_a2 = std::max(out.max_req_a2, rem / (hT * hT));
  ++out.runs;
}

}  // namespace detail

inline CalibrationResult calibrate_constants(std::uint64_t seed_base = 9001,
                                             std::ostream* log = nullptr) {
  CalibrationResult out;
  out.seed_lo = seed_base;
  out.family =
      "grid: n_sys x n_bath in {1,2}^2 and per-qubit model n in 1..4; "
      "tau in {0.0125,0.02,0.05}; delta in {0,0.002}; bath_norm in {0,0.2}; "
      "sb_scale in {0.05,0.15}; control off/on; plus random 3-segment "
      "switched generators (spans {0.15,0.25,0.35}, scales {0.6,1.0}) for "
      "the series remainder";

  std::uint64_t seed = seed_base;
  for (int n_sys : {1, 2}) {
    for (int n_bath : {1, 2}) {
      for (double tau : {0.02, 0.05}) {
        for (double delta : {0.0, 0.002}) {
          // bath_norm 0 probes the pure second-order regime (the first-order
          // dressing term vanishes, so the quadratic constant carries the
          // whole bound); the larger couplings probe the ratio's J dependence
          for (double bath_norm : {0.0, 0.2}) {
            for (double sb : {0.05, 0.15}) {
              for (int ctrl : {0, 1}) {
                SimulationScenario sc;
                sc.n_sys = n_sys;
                sc.n_bath = n_bath;
                sc.tau = tau;
                sc.delta = delta;
                sc.bath_norm = bath_norm;
                sc.sb_scale = sb;
                sc.seed = seed++;
                if (ctrl) {
                  if (n_sys < 2) continue;
                  sc.gate = GateKind::HeisenbergExchange;
                  sc.theta = 0.3;
                }
                detail::calibrate_one(sc, out);
              }
            }
          }
        }
      }
    }
  }
  // shared-coupler family used by the size sweep
  for (int n : {1, 2, 3, 4}) {
    for (int rep = 0; rep < 2; ++rep) {
      SimulationScenario sc;
      sc.n_sys = n;
      sc.n_bath = n;
      sc.per_qubit_model = true;
      sc.tau = 0.0125;
      sc.seed = seed++;
      if (n >= 2) {
        sc.gate = GateKind::HeisenbergExchange;
        sc.ctrl_rate = 0.01;
      }
      detail::calibrate_one(sc, out);
    }
  }
  for (double span : {0.15, 0.25, 0.35})
    for (double scale : {0.6, 1.0})
      for (int i = 0; i < 16; ++i) detail::calibrate_magnus_one(seed++, span, scale, out);
  out.seed_hi = seed - 1;

  out.k.c = std::max(1e-3, out.safety_c * out.max_req_c);
  out.k.d = std::max(1e-3, out.safety_d * out.max_req_d);
  out.k.a2 = std::max(1e-3, out.safety_a2 * out.max_req_a2);
  out.k.c_prime = out.k.c;
  if (log)
    *log << "calibrated over " << out.runs << " runs, seeds [" << out.seed_lo
         << "," << out.seed_hi << "]\n"
         << "  c  = " << out.k.c << "  (max required " << out.max_req_c << ")\n"
         << "  d  = " << out.k.d << "  (max required " << out.max_req_d << ")\n"
         << "  a2 = " << out.k.a2 << "  (max required " << out.max_req_a2 << ")\n";
  return out;
}

inline void write_constants(const std::string& path, const CalibrationResult& r,
                            const std::string& date) {
  nlohmann::ordered_json j;
  j["c"] = r.k.c;
  j["d"] = r.k.d;
  j["a2"] = r.k.a2;
  j["c_prime"] = r.k.c_prime;
  j["provenance"]["date"] = date;
  j["provenance"]["family"] = r.family;
  j["provenance"]["seed_lo"] = r.seed_lo;
  j["provenance"]["seed_hi"] = r.seed_hi;
  j["provenance"]["runs"] = r.runs;
  j["provenance"]["safety_c"] = r.safety_c;
  j["provenance"]["safety_d"] = r.safety_d;
  j["provenance"]["safety_a2"] = r.safety_a2;
  j["provenance"]["max_required_c"] = r.max_req_c;
  j["provenance"]["max_required_d"] = r.max_req_d;
  j["provenance"]["max_required_a2"] = r.max_req_a2;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline BoundConstants load_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open constants file: " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  BoundConstants k;
  k.c = j.at("c").get<double>();
  k.d = j.at("d").get<double>();
  k.a2 = j.at("a2").get<double>();
  k.c_prime = j.value("c_prime", k.c);
  return k;
}

}  // namespace ddsim

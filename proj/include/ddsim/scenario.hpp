#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddsim/group.hpp"
#include "ddsim/hamiltonian.hpp"
#include "ddsim/schedule.hpp"
#include "ddsim/states.hpp"

namespace ddsim {

enum class GateKind { None, HeisenbergExchange, LogicalZOnDfs };

inline GateKind gate_from_name(const std::string& s) {
  if (s == "none") return GateKind::None;
  if (s == "heisenberg-exchange") return GateKind::HeisenbergExchange;
  if (s == "logical-Z-on-DFS") return GateKind::LogicalZOnDfs;
  throw std::invalid_argument("unknown gate name: " + s);
}

inline std::string gate_name(GateKind g) {
  switch (g) {
    case GateKind::None: return "none";
    case GateKind::HeisenbergExchange: return "heisenberg-exchange";
    case GateKind::LogicalZOnDfs: return "logical-Z-on-DFS";
  }
  return "?";
}

enum class InitSystem { Plus, Zero, Random };
enum class InitBath { Mixed, Random };

// Everything needed to reproduce one run. Angles: either `theta` (total logic
// angle over the m-cycle run, sliced evenly across free intervals) or
// `ctrl_rate` (fixed drive amplitude lambda; theta then scales with run time).
struct SimulationScenario {
  int n_sys = 1;
  int n_bath = 1;
  double heisenberg_j = 1.0;  // uniform nearest-neighbor logic coupling
  double sb_scale = 0.05;     // per-term system-bath operator norm
  double bath_norm = 0.2;     // pure-bath operator norm (per qubit when per_qubit_model)
  GateKind gate = GateKind::None;
  double theta = 0.0;
  std::optional<double> ctrl_rate;      // wins over theta when set
  std::string group = "universal";      // or explicit labels below
  std::vector<std::string> pulse_labels;
  double tau = 0.05;
  double delta = 0.0;
  int m = 1;
  std::uint64_t seed = 1;
  double control_noise = 0.0;  // over-rotation: theta -> theta (1 + eps)
  bool ctrl_during_pulses = false;
  bool per_qubit_model = false;  // identical per-qubit couplers and baths
  InitSystem init_system = InitSystem::Plus;
  InitBath init_bath = InitBath::Mixed;

  void validate() const {
    if (n_sys < 1 || n_bath < 1)
      throw std::invalid_argument("scenario: need at least one system and one bath qubit");
    if (n_sys + n_bath > 12)
      throw std::invalid_argument("scenario: register too large");
    if (tau <= 0.0) throw std::invalid_argument("scenario: tau must be positive");
    if (delta < 0.0) throw std::invalid_argument("scenario: delta must be nonnegative");
    if (m < 1) throw std::invalid_argument("scenario: m must be >= 1");
    if (sb_scale < 0.0 || bath_norm < 0.0)
      throw std::invalid_argument("scenario: negative coupling scale");
    if (gate != GateKind::None && n_sys < 2)
      throw std::invalid_argument("scenario: two-qubit gates need n_sys >= 2");
    if (per_qubit_model && n_bath != n_sys)
      throw std::invalid_argument("scenario: per-qubit model needs n_bath == n_sys");
  }
};

// Scenario compiled into concrete operators, ready for propagation.
struct Assembled {
  SimulationScenario sc;
  SystemBathSplit split;       // h_ctrl carries the actual (noisy) amplitude
  Mat r_op;                    // normalized logic generator, ||R|| = 1 (zero for none)
  double lambda_ideal = 0.0;   // drive amplitude theta would need
  double lambda_actual = 0.0;  // with over-rotation applied
  double theta_total_ideal = 0.0;
  double theta_total_actual = 0.0;
  PulseSchedule schedule;
  DecouplingGroup group;
  StrengthReport strength;
  Mat rho_s0, rho_b0;

  int n_pulses() const { return schedule.n_pulses(); }
  double cycle_time() const { return schedule.cycle_time(); }
  double run_time() const { return sc.m * cycle_time(); }
  // control-on time per cycle (gate accrues only while the drive is on)
  double ctrl_time_per_cycle() const {
    return sc.ctrl_during_pulses ? cycle_time() : n_pulses() * schedule.tau;
  }
};

inline Mat logic_generator(const SimulationScenario& sc) {
  const Eigen::Index ds = 1LL << sc.n_sys;
  switch (sc.gate) {
    case GateKind::None:
      return Mat::Zero(ds, ds);
    case GateKind::HeisenbergExchange: {
      Mat chain = heisenberg_control(sc.n_sys, nearest_neighbor_chain(sc.n_sys, sc.heisenberg_j));
      double n = op_norm(chain);
      if (n == 0.0) throw std::invalid_argument("logic_generator: zero exchange chain");
      return Mat(chain / n);
    }
    case GateKind::LogicalZOnDfs: {
      // exchange on the first pair, shifted and scaled to eigenvalues {-1, 0}:
      // a pure phase on the singlet, i.e. a logical Z rotation on the
      // singlet/triplet-0 encoded qubit.
      Mat ex = heisenberg_control(sc.n_sys, {{0, 1, 1.0}});
      return Mat(0.25 * (ex - eye(ds)));
    }
  }
  throw std::logic_error("logic_generator: bad gate");
}

inline Assembled assemble(const SimulationScenario& sc) {
  sc.validate();
  Assembled a;
  a.sc = sc;

  if (sc.pulse_labels.empty() || sc.group == "universal") {
    if (!sc.pulse_labels.empty())
      throw std::invalid_argument("assemble: group 'universal' does not take pulse labels");
    a.schedule = universal_schedule(sc.n_sys, sc.tau, sc.delta);
  } else {
    for (const auto& lab : sc.pulse_labels)
      if (static_cast<int>(lab.size()) != sc.n_sys)
        throw std::invalid_argument("assemble: pulse label length must equal n_sys");
    a.schedule = schedule_from_pauli_strings(sc.pulse_labels, sc.tau, sc.delta);
  }
  a.group = group_from_pulses(a.schedule);

  a.r_op = logic_generator(sc);
  const double ctrl_time_total = sc.m * a.ctrl_time_per_cycle();
  if (sc.ctrl_rate) {
    a.lambda_ideal = *sc.ctrl_rate;
    a.theta_total_ideal = a.lambda_ideal * ctrl_time_total;
  } else {
    a.theta_total_ideal = sc.theta;
    a.lambda_ideal = sc.theta / ctrl_time_total;
  }
  if (sc.gate == GateKind::None) {
    a.lambda_ideal = 0.0;
    a.theta_total_ideal = 0.0;
  }
  a.lambda_actual = a.lambda_ideal * (1.0 + sc.control_noise);
  a.theta_total_actual = a.theta_total_ideal * (1.0 + sc.control_noise);

  a.split.n_sys = sc.n_sys;
  a.split.n_bath = sc.n_bath;
  a.split.h_ctrl = a.lambda_actual * a.r_op;
  if (sc.per_qubit_model) {
    a.split.h_err = linear_coupling(sc.n_sys, sc.n_bath,
                                    per_qubit_coupling_terms(sc.n_sys, sc.sb_scale, sc.seed));
    a.split.h_bath = per_qubit_bath(sc.n_bath, sc.bath_norm, sc.seed * 31 + 7);
  } else {
    a.split.h_err = linear_coupling(sc.n_sys, sc.n_bath,
                                    random_coupling_terms(sc.n_sys, sc.n_bath, sc.sb_scale, sc.seed));
    a.split.h_bath = random_bath(sc.n_bath, sc.bath_norm, sc.seed * 31 + 7);
  }
  a.strength = strengths(a.split);

  const Eigen::Index ds = a.split.dim_sys(), db = a.split.dim_bath();
  switch (sc.init_system) {
    case InitSystem::Plus: {
      Vec plus = Vec::Constant(ds, cplx(1.0, 0.0) / std::sqrt(double(ds)));
      a.rho_s0 = pure_state(plus).mat();
      break;
    }
    case InitSystem::Zero: {
      Vec zero = Vec::Zero(ds);
      zero(0) = 1.0;
      a.rho_s0 = pure_state(zero).mat();
      break;
    }
    case InitSystem::Random:
      a.rho_s0 = pure_state(random_pure(ds, sc.seed * 131 + 3)).mat();
      break;
  }
  a.rho_b0 = (sc.init_bath == InitBath::Mixed)
                 ? maximally_mixed(db).mat()
                 : pure_state(random_pure(db, sc.seed * 131 + 5)).mat();
  return a;
}

}  // namespace ddsim

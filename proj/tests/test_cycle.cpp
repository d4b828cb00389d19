#include <catch2/catch_amalgamated.hpp>
#include <numbers>

#include "ddsim/cycle.hpp"

using namespace ddsim;
using Catch::Approx;

namespace {

SimulationScenario minimal_scenario(std::uint64_t seed) {
  SimulationScenario sc;
  sc.n_sys = 1;
  sc.n_bath = 1;
  sc.tau = 0.02;
  sc.delta = 0.002;
  sc.seed = seed;
  return sc;
}

}  // namespace

TEST_CASE("cycle propagator basics", "[cycle]") {
  Assembled a = assemble(minimal_scenario(301));
  CycleResult r = run_cycle(a);

  CHECK(r.n_pulses == 4);
  CHECK(r.T == Approx(4 * 0.022).margin(1e-15));
  CHECK(unitarity_defect(r.u_total) <= 1e-11);
  CHECK(unitarity_defect(r.u_sec) <= 1e-11);
  CHECK(op_norm(Mat(r.u_sec * r.u_err - r.u_total)) <= 1e-11);
  CHECK(hermiticity_defect(r.phi_e) <= 1e-11);
  CHECK(op_norm(Mat(expm_hermitian(r.phi_e, 1.0) - r.u_err)) <= 1e-9);
  CHECK(r.phi_e_norm == Approx(op_norm(r.phi_e)).margin(1e-14));
  CHECK(op_norm(Mat(r.frames_emb[0] - eye(4))) <= 1e-10);
}

TEST_CASE("segment logs recompose the error propagator", "[cycle]") {
  Assembled a = assemble(minimal_scenario(302));
  CycleResult r = run_cycle(a);

  Mat rebuilt = eye(4);
  for (int i = 0; i < r.n_pulses; ++i) {
    rebuilt = expm_hermitian(r.h_free[i], r.tau) * rebuilt;
    rebuilt = embed_system(a.schedule.pulses[i].ideal(), 2) *
              expm_hermitian(r.h_pulse[i], r.delta) * rebuilt;
  }
  CHECK(op_norm(Mat(rebuilt - r.u_err)) <= 1e-10);
}

TEST_CASE("zero coupling leaves no error phase", "[cycle]") {
  SimulationScenario sc = minimal_scenario(303);
  sc.sb_scale = 0.0;
  Assembled a = assemble(sc);
  CycleResult r = run_cycle(a);
  CHECK(r.phi_e_norm <= 1e-9);
  PddResult run = run_pdd(a);
  DistanceRecord d = final_state_distances(a, run);
  CHECK(d.d_dd <= 1e-9);
}

TEST_CASE("leading error phase approaches the projected coupling", "[cycle]") {
  // partial frame set that keeps a coupling component; the gap between the
  // cycle phase and tau times the projected coupling shrinks quadratically
  auto residual_at = [](double tau) {
    SimulationScenario sc;
    sc.n_sys = 1;
    sc.n_bath = 1;
    sc.group = "explicit";
    sc.pulse_labels = {"X", "X"};
    sc.tau = tau;
    sc.delta = 0.0;
    sc.sb_scale = 0.1;
    sc.seed = 304;
    Assembled a = assemble(sc);
    CycleResult r = run_cycle(a);
    Mat first = tau * project_group(a.group, a.split.h_err);
    return op_norm(Mat(r.phi_e - first));
  };
  const double r1 = residual_at(0.04);
  const double r2 = residual_at(0.02);
  CHECK(r2 / r1 <= 0.35);
  CHECK(r2 / r1 >= 0.15);
}

TEST_CASE("convergence domain is enforced", "[cycle]") {
  SimulationScenario sc = minimal_scenario(305);
  sc.tau = 9.0;
  sc.sb_scale = 1.0;
  CHECK_THROWS_AS(run_cycle(assemble(sc)), ConvergenceError);
}

TEST_CASE("control angle bookkeeping", "[cycle]") {
  SimulationScenario sc;
  sc.n_sys = 2;
  sc.n_bath = 1;
  sc.gate = GateKind::HeisenbergExchange;
  sc.ctrl_rate = 0.02;
  sc.control_noise = 0.1;
  sc.tau = 0.02;
  sc.delta = 0.002;
  sc.seed = 306;

  SECTION("drive stalls during pulse windows by default") {
    Assembled a = assemble(sc);
    CycleResult r = run_cycle(a);
    CHECK(r.theta_cycle_actual == Approx(0.02 * 1.1 * 4 * 0.02).margin(1e-15));
  }
  SECTION("or stays on through them") {
    sc.ctrl_during_pulses = true;
    Assembled a = assemble(sc);
    CycleResult r = run_cycle(a);
    CHECK(r.theta_cycle_actual == Approx(0.02 * 1.1 * 4 * 0.022).margin(1e-15));
  }
  SECTION("fixed total angle picks the matching rate") {
    sc.ctrl_rate.reset();
    sc.theta = 0.3;
    sc.m = 2;
    Assembled a = assemble(sc);
    CHECK(a.theta_total_ideal == Approx(0.3).margin(1e-15));
    CHECK(a.lambda_ideal == Approx(0.3 / (2 * 4 * 0.02)).margin(1e-12));
  }
}

TEST_CASE("repeated cycles", "[cycle]") {
  SimulationScenario sc = minimal_scenario(307);
  sc.m = 4;
  Assembled a = assemble(sc);
  PddResult run = run_pdd(a);

  SECTION("long propagator is the cycle power") {
    Mat direct = eye(4);
    for (int j = 0; j < 4; ++j) direct = run.cycle.u_total * direct;
    CHECK(op_norm(Mat(run.u_total_long - direct)) <= 1e-12);
  }
  SECTION("per-cycle factors repeat") {
    REQUIRE(run.per_cycle_dev.size() == 4);
    for (double dev : run.per_cycle_dev) CHECK(dev <= 1e-12);
  }
  SECTION("composed error phase scales with m below the branch") {
    CHECK(run.phi_pdd_norm == Approx(4.0 * run.cycle.phi_e_norm).margin(1e-10));
    REQUIRE(run.phi_true_norm >= 0.0);
    CHECK(run.phi_true_norm <= run.phi_pdd_norm + 1e-10);
  }
  SECTION("beyond the tracing cap the power path takes over") {
    sc.m = 70;
    PddResult big = run_pdd(assemble(sc));
    CHECK(big.per_cycle_dev.empty());
    CHECK(op_norm(Mat(big.u_err_pdd - unitary_power(run.cycle.u_err, 70))) <= 1e-11);
    CHECK(big.phi_pdd_norm == Approx(70.0 * run.cycle.phi_e_norm).margin(1e-9));
  }
}

TEST_CASE("state distances", "[cycle]") {
  SimulationScenario sc = minimal_scenario(308);
  sc.m = 2;
  Assembled a = assemble(sc);
  PddResult run = run_pdd(a);
  DistanceRecord d = final_state_distances(a, run);

  CHECK(d.d_dd >= 0.0);
  CHECK(d.d_dd <= 1.0);
  CHECK(d.d_id <= 1e-14);  // no gate: reference and ideal frames coincide
  CHECK(d.d_tot <= d.d_dd + d.d_id + 1e-12);
  CHECK(d.d_s <= d.d_tot + 1e-12);  // partial trace contracts trace distance
  CHECK(d.f_q >= 0.0);
  CHECK(d.f_q <= 1.0 + 1e-10);

  SECTION("over-rotation separates reference from ideal") {
    SimulationScenario noisy;
    noisy.n_sys = 2;
    noisy.n_bath = 1;
    noisy.gate = GateKind::HeisenbergExchange;
    noisy.theta = 0.4;
    noisy.control_noise = 0.05;
    noisy.tau = 0.02;
    noisy.seed = 309;
    noisy.init_system = InitSystem::Random;  // exchange-symmetric states hide the angle
    Assembled an = assemble(noisy);
    DistanceRecord dn = final_state_distances(an, run_pdd(an));
    CHECK(dn.d_id > 1e-4);
  }
}

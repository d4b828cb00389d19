#pragma once

#include <string>
#include <vector>

#include "ddsim/bounds.hpp"
#include "ddsim/cycle.hpp"
#include "ddsim/magnus.hpp"
#include "ddsim/rng.hpp"
#include "ddsim/states.hpp"

namespace ddsim {

// Randomized property checks, shared by the test suite and the `verify`
// subcommand. Each suite runs `trials` independent draws; a failure records a
// message and counts, it does not throw.
struct SuiteResult {
  std::string name;
  int trials = 0;
  int checks = 0;
  int failures = 0;
  std::vector<std::string> messages;

  bool ok() const { return failures == 0; }
  void expect(bool cond, const std::string& msg) {
    ++checks;
    if (!cond) {
      ++failures;
      if (messages.size() < 20) messages.push_back(msg);
    }
  }
};

inline SuiteResult verify_norms(int trials, std::uint64_t seed0) {
  SuiteResult s{"norms"};
  s.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t sd = seed0 + 101 * static_cast<std::uint64_t>(t);
    const Eigen::Index d = 3 + (t % 4);
    Mat a = random_matrix(d, sd);
    Mat b = random_matrix(d, sd + 1);
    Mat u = random_unitary(d, sd + 2), v = random_unitary(d, sd + 3);
    const std::string tag = " [norms t=" + std::to_string(t) + "]";
    s.expect(op_norm(a) <= norm(a, NormKind::Frobenius) + 1e-12 &&
                 norm(a, NormKind::Frobenius) <= trace_norm(a) + 1e-12,
             "norm ordering violated" + tag);
    for (auto kind : {NormKind::Operator, NormKind::Frobenius, NormKind::Trace}) {
      s.expect(norm(Mat(a + b), kind) <= norm(a, kind) + norm(b, kind) + 1e-12,
               "triangle inequality violated" + tag);
      s.expect(std::abs(norm(Mat(u * a * v), kind) - norm(a, kind)) <= 1e-10,
               "unitary invariance violated" + tag);
    }
    s.expect(op_norm(Mat(a * b)) <= op_norm(a) * op_norm(b) + 1e-12,
             "submultiplicativity violated" + tag);
    s.expect(std::abs(op_norm(tensor(a, b)) - op_norm(a) * op_norm(b)) <= 1e-10,
             "tensor norm not multiplicative" + tag);

    // partial trace contracts each norm by a dimension-dependent factor,
    // saturated by a (x) identity
    const Eigen::Index db = 2 + (t % 3);
    Mat big = random_matrix(d * db, sd + 6);
    Mat red = partial_trace_bath(big, db);
    Mat sat = tensor(a, eye(db));
    for (auto kind : {NormKind::Operator, NormKind::Frobenius, NormKind::Trace}) {
      const double f = partial_trace_norm_factor(kind, db);
      s.expect(norm(red, kind) <= f * norm(big, kind) + 1e-10,
               "partial trace norm factor violated" + tag);
      s.expect(std::abs(norm(partial_trace_bath(sat, db), kind) - f * norm(sat, kind)) <= 1e-9,
               "partial trace factor not saturated by a (x) identity" + tag);
      s.expect(norm(Mat(u * a * v), kind) <= op_norm(u) * norm(a, kind) * op_norm(v) + 1e-10,
               "mixed product inequality violated" + tag);
    }
    Mat g1 = random_matrix(d, sd + 7), g2 = random_matrix(d, sd + 8);
    for (auto kind : {NormKind::Operator, NormKind::Frobenius, NormKind::Trace})
      s.expect(norm(Mat(g1 * a * g2), kind) <= op_norm(g1) * norm(a, kind) * op_norm(g2) + 1e-10,
               "mixed product inequality violated (general factors)" + tag);

    DensityMatrix r1 = random_density(d, sd + 4), r2 = random_density(d, sd + 5);
    const double dist = trace_distance(r1, r2);
    const double fid = fidelity(r1, r2);
    s.expect(dist >= -1e-12 && dist <= 1.0 + 1e-12, "trace distance outside [0,1]" + tag);
    s.expect(fid >= -1e-12 && fid <= 1.0 + 1e-10, "fidelity outside [0,1]" + tag);
    s.expect(1.0 - fid <= dist + 1e-9, "lower fidelity-distance relation violated" + tag);
    s.expect(dist <= std::sqrt(std::max(0.0, 1.0 - fid * fid)) + 1e-9,
             "upper fidelity-distance relation violated" + tag);
  }
  return s;
}

inline SuiteResult verify_magnus(int trials, std::uint64_t seed0) {
  SuiteResult s{"magnus"};
  s.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t sd = seed0 + 211 * static_cast<std::uint64_t>(t);
    const Eigen::Index d = 4;
    const std::string tag = " [magnus t=" + std::to_string(t) + "]";
    Mat h1 = random_hermitian(d, 1.0, sd);
    Mat h2 = random_hermitian(d, 1.0, sd + 1);

    // commuting family: expansion collapses to the plain integral
    auto gen_c = [&](double tt) { return Mat((1.0 + tt) * h1); };
    MagnusTerms mc = magnus_terms(gen_c, 0.3, 64);
    s.expect(op_norm(mc.omega2) <= 1e-10 && op_norm(mc.omega3) <= 1e-10,
             "higher terms nonzero for commuting generator" + tag);

    // third-order accuracy: remainder after omega1+2+3 drops ~16x when T halves
    auto gen = [&](double tt) { return Mat(std::cos(3.0 * tt) * h1 + std::sin(2.0 * tt) * h2); };
    auto remainder = [&](double T) {
      Mat u = time_ordered_exp(gen, 0.0, T, 4000);
      MagnusTerms mg = magnus_terms(gen, T, 512);
      return op_norm(Mat(unitary_log(u) - mg.omega1 - mg.omega2 - mg.omega3));
    };
    const double rT = remainder(0.2), rT2 = remainder(0.1);
    s.expect(rT2 <= rT / 8.0 + 1e-13, "remainder not fourth-order in T" + tag);

    // convergence flag reflects the action integral
    MagnusTerms small = magnus_terms(gen, 0.2, 64);
    s.expect(small.converged(), "small action flagged as non-convergent" + tag);
  }
  return s;
}

inline SuiteResult verify_lemmas(int trials, std::uint64_t seed0) {
  SuiteResult s{"lemmas"};
  s.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t sd = seed0 + 307 * static_cast<std::uint64_t>(t);
    const Eigen::Index d = 4;
    const std::string tag = " [lemmas t=" + std::to_string(t) + "]";
    const double a_norm = 0.05 + 0.4 * (t % 5);
    Mat a = random_hermitian(d, a_norm, sd);
    Mat b = random_matrix(d, sd + 1);
    for (auto kind : {NormKind::Operator, NormKind::Trace}) {
      Lemma2Report r2 = lemma2_check(a, b, kind);
      s.expect(r2.margin >= -kMarginTol, "conjugation perturbation bound violated" + tag);
      if (r2.linearized)  // the linear form only relaxes the exponential one
        s.expect(*r2.linearized >= r2.bound - 1e-12 &&
                     r2.actual <= *r2.linearized + kMarginTol,
                 "linearized bound inconsistent" + tag);
    }

    Mat h0 = random_hermitian(d, 1.0, sd + 2);
    Mat v1 = random_hermitian(d, 0.3, sd + 3);
    Mat v2 = random_hermitian(d, 0.3, sd + 4);
    auto v = [&](double tt) { return Mat(std::cos(tt) * v1 + std::sin(2.0 * tt) * v2); };
    Lemma3Report r3 = lemma3_check(h0, v, 0.8, 400);
    s.expect(r3.margin >= -1e-6, "effective generator above mean perturbation" + tag);
    s.expect(r3.v_mean <= r3.v_sup + 1e-12, "mean above sup" + tag);

    // phase subadditivity of a product of exponentials, inside the principal domain
    Mat g1 = random_hermitian(d, 0.4, sd + 5);
    Mat g2 = random_hermitian(d, 0.4, sd + 6);
    Mat prod = expm_hermitian(g1, 1.0) * expm_hermitian(g2, 1.0);
    double lhs = op_norm(unitary_log(prod));
    s.expect(lhs <= op_norm(g1) + op_norm(g2) + 1e-10,
             "product phase exceeds summed phases" + tag);

    // series form of the adjoint map agrees with the exact map
    Mat small_a = random_hermitian(d, 0.2, sd + 7);
    Mat dev = adjoint_map(small_a, b) - adjoint_series(small_a, b, 40);
    s.expect(op_norm(dev) <= 1e-10, "adjoint series disagrees with exact map" + tag);
  }
  return s;
}

inline SuiteResult verify_decoupling(int trials, std::uint64_t seed0) {
  SuiteResult s{"decoupling"};
  s.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t sd = seed0 + 401 * static_cast<std::uint64_t>(t);
    const int n = 1 + (t % 2);
    const std::string tag = " [decoupling t=" + std::to_string(t) + "]";
    auto terms = random_coupling_terms(n, 1, 0.1, sd);
    Mat h_err = linear_coupling(n, 1, terms);
    DecouplingGroup g = universal_group(n);
    s.expect(check_decoupling_condition(g, h_err).ok,
             "universal group fails to average out a linear coupling" + tag);

    PulseSchedule sch = universal_schedule(n, 0.05, 0.0);
    DecouplingGroup gp = group_from_pulses(sch);
    s.expect(gp.elements.size() == g.elements.size(), "group size mismatch" + tag);
    for (size_t k = 0; k < g.elements.size(); ++k)
      s.expect(phase_dist(gp.elements[k], g.elements[k]) <= 1e-10,
               "pulse-generated frame differs from group element" + tag);

    Mat prod = eye(1 << n);
    for (const auto& p : sch.pulses) prod = p.ideal() * prod;
    s.expect(op_norm(Mat(prod - eye(1 << n))) <= 1e-10, "cycle does not close" + tag);

    // projection is a group average: idempotent and commutes with every element
    Mat m = random_matrix(1 << n, sd + 9);
    Mat pm = project_group_avg(g, m);
    s.expect(op_norm(Mat(project_group_avg(g, pm) - pm)) <= 1e-10,
             "projection not idempotent" + tag);
    for (const auto& el : g.elements)
      s.expect(op_norm(commutator(Mat(el), pm)) <= 1e-9,
               "projected operator not invariant" + tag);
  }
  return s;
}

inline SuiteResult verify_evolution(int trials, std::uint64_t seed0) {
  SuiteResult s{"evolution"};
  s.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t sd = seed0 + 503 * static_cast<std::uint64_t>(t);
    const std::string tag = " [evolution t=" + std::to_string(t) + "]";
    SimulationScenario sc;
    sc.seed = sd;
    sc.tau = 0.04;
    sc.delta = (t % 2) ? 0.002 : 0.0;
    sc.m = 1 + (t % 3);
    Assembled a = assemble(sc);
    PddResult run = run_pdd(a);
    const CycleResult& cyc = run.cycle;

    s.expect(unitarity_defect(cyc.u_total) <= 1e-10, "propagator not unitary" + tag);
    s.expect(hermiticity_defect(cyc.phi_e) <= 1e-10, "error phase not hermitian" + tag);
    s.expect(op_norm(Mat(expm_hermitian(cyc.phi_e, 1.0) - cyc.u_err)) <= kRoundTripTol,
             "phase does not regenerate the error propagator" + tag);

    // segment logs recompose the cycle exactly (up to a tracked global phase)
    Mat rebuilt = eye(a.split.dim());
    for (int i = 0; i < cyc.n_pulses; ++i) {
      rebuilt = expm_hermitian(cyc.h_free[i], cyc.tau) * rebuilt;
      Mat p_emb = embed_system(a.schedule.pulses[i].ideal(), a.split.dim_bath());
      if (cyc.delta > 0.0)
        rebuilt = p_emb * expm_hermitian(cyc.h_pulse[i], cyc.delta) * rebuilt;
      else
        rebuilt = p_emb * rebuilt;
    }
    s.expect(phase_dist(Mat(cyc.u_sec * rebuilt), cyc.u_total) <= 1e-8,
             "segment logs do not recompose the cycle" + tag);

    DistanceRecord dist = final_state_distances(a, run);
    s.expect(dist.d_tot <= dist.d_dd + dist.d_id + 1e-10,
             "distance triangle inequality violated" + tag);
    s.expect(dist.d_s <= dist.d_tot + 1e-10, "reduced distance above total" + tag);

    // with the coupling removed the error phase vanishes
    SimulationScenario sc0 = sc;
    sc0.sb_scale = 0.0;
    CycleResult cyc0 = run_cycle(assemble(sc0));
    s.expect(cyc0.phi_e_norm <= 1e-9, "error phase nonzero without coupling" + tag);
  }
  return s;
}

inline std::vector<SuiteResult> verify_suites(const std::string& which, int trials,
                                              std::uint64_t seed0) {
  std::vector<SuiteResult> out;
  auto want = [&](const std::string& n) { return which == "all" || which == n; };
  if (want("norms")) out.push_back(verify_norms(trials, seed0));
  if (want("magnus")) out.push_back(verify_magnus(std::max(1, trials / 4), seed0));
  if (want("lemmas")) out.push_back(verify_lemmas(trials, seed0));
  if (want("decoupling")) out.push_back(verify_decoupling(trials, seed0));
  if (want("evolution")) out.push_back(verify_evolution(std::max(1, trials / 2), seed0));
  if (out.empty()) throw std::invalid_argument("unknown suite: " + which);
  return out;
}

}  // namespace ddsim

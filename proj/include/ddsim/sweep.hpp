#pragma once

#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "ddsim/bounds.hpp"
#include "ddsim/config.hpp"
#include "ddsim/cycle.hpp"
#include "ddsim/fit.hpp"
#include "ddsim/report.hpp"

namespace ddsim {

// Largest m >= 1 with pred(m) true, assuming pred is monotone (true then
// false); 0 when pred(1) already fails. Exponential bracket, then bisection.
inline long long largest_true(const std::function<bool(long long)>& pred,
                              long long cap = 1LL << 24) {
  if (!pred(1)) return 0;
  long long lo = 1, hi = 2;
  while (hi <= cap && pred(hi)) {
    lo = hi;
    hi *= 2;
  }
  if (hi > cap) return cap;
  while (hi - lo > 1) {
    long long mid = lo + (hi - lo) / 2;
    if (pred(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

struct SweepPoint {
  int n = 1;
  double tau = 0.0;
  std::uint64_t seed = 0;
  double J = 0.0, beta = 0.0, T_cycle = 0.0;
  double phi_e_norm = 0.0, bound_cycle = 0.0;
  long long m_star = 0;  // largest m with the m-cycle phase bound <= target
  long long m_hat = -1;  // largest m with simulated d_dd <= target
  double d_dd_at_m_hat = 0.0;
  bool ok = false;
  std::string error;
};

inline SimulationScenario sweep_point_scenario(const SweepSpec& spec, int n, double tau,
                                               std::uint64_t seed) {
  SimulationScenario sc = spec.base;
  sc.n_sys = n;
  if (sc.per_qubit_model) sc.n_bath = n;
  sc.tau = tau;
  sc.seed = seed;
  sc.m = 1;
  if (n < 2 && sc.gate != GateKind::None) {
    sc.gate = GateKind::None;
    sc.theta = 0.0;
    sc.ctrl_rate.reset();
  }
  return sc;
}

inline SweepPoint run_sweep_point(const SweepSpec& spec, int n, double tau,
                                  std::uint64_t seed, const BoundConstants& k) {
  SweepPoint pt;
  pt.n = n;
  pt.tau = tau;
  pt.seed = seed;
  try {
    SimulationScenario sc = sweep_point_scenario(spec, n, tau, seed);
    Assembled a = assemble(sc);
    CycleResult cyc = run_cycle(a);
    pt.J = a.strength.J;
    pt.beta = a.strength.beta;
    pt.T_cycle = cyc.T;
    pt.phi_e_norm = cyc.phi_e_norm;
    pt.bound_cycle = phi_e_bound(pt.J, pt.beta, pt.T_cycle,
                                 cyc.n_pulses * cyc.delta, k);

    const double target = spec.target_error;
    pt.m_star = largest_true([&](long long m) {
      return pdd_bound(pt.J, pt.beta, m * pt.T_cycle, static_cast<int>(m),
                       static_cast<int>(m) * cyc.n_pulses, cyc.delta, k) <= target;
    });

    // empirical cycle budget: power the cycle propagator, compare against the
    // uncoupled frame on the standard initial state
    const Mat rho0 = tensor(a.rho_s0, a.rho_b0);
    auto d_dd_at = [&](long long m) {
      Mat u_long = unitary_power(cyc.u_total, m);
      Mat u_sec = tensor(expm_hermitian(a.r_op, m * cyc.theta_cycle_actual),
                         expm_hermitian(a.split.h_bath, m * cyc.T));
      Mat rho_t = u_long * rho0 * u_long.adjoint();
      Mat rho_ref = u_sec * rho0 * u_sec.adjoint();
      return trace_distance(rho_t, rho_ref);
    };
    pt.m_hat = largest_true([&](long long m) { return d_dd_at(m) <= target; },
                            1LL << 20);
    pt.d_dd_at_m_hat = pt.m_hat >= 1 ? d_dd_at(pt.m_hat) : d_dd_at(1);
    pt.ok = true;
  } catch (const std::exception& e) {
    pt.ok = false;
    pt.error = e.what();
  }
  return pt;
}

struct SweepOutcome {
  std::vector<SweepPoint> points;
  // log-log slopes over the n axis (replicates averaged in log space)
  double slope_m_star = 0.0, slope_m_hat = 0.0, slope_j = 0.0;
  bool slopes_valid = false;
};

namespace detail {

inline void fit_sweep_slopes(SweepOutcome& out, const SweepSpec& spec) {
  if (spec.n_list.size() < 2) return;
  std::vector<double> xs, ms, mh, js;
  for (int n : spec.n_list) {
    double lm = 0, lh = 0, lj = 0;
    int cnt = 0;
    for (const auto& p : out.points) {
      if (p.n != n || !p.ok || p.m_star < 1 || p.m_hat < 1 || p.J <= 0) continue;
      lm += std::log(static_cast<double>(p.m_star));
      lh += std::log(static_cast<double>(p.m_hat));
      lj += std::log(p.J);
      ++cnt;
    }
    if (cnt == 0) return;  // a grid column produced nothing usable
    xs.push_back(std::log(static_cast<double>(n)));
    ms.push_back(lm / cnt);
    mh.push_back(lh / cnt);
    js.push_back(lj / cnt);
  }
  if (xs.size() < 2) return;
  out.slope_m_star = least_squares(xs, ms).slope;
  out.slope_m_hat = least_squares(xs, mh).slope;
  out.slope_j = least_squares(xs, js).slope;
  out.slopes_valid = true;
}

}  // namespace detail

// Runs the grid (n_list x tau_list x replicates), reusing `done` rows from a
// previous partial run; points execute on `workers` threads, outputs land in
// fixed slots so the result order is deterministic.
inline SweepOutcome run_sweep(const SweepSpec& spec, const BoundConstants& k,
                              const std::vector<SweepPoint>& done = {},
                              int workers = 1) {
  spec.validate();
  std::vector<int> ns = spec.n_list.empty() ? std::vector<int>{spec.base.n_sys}
                                            : spec.n_list;
  std::vector<double> taus =
      spec.tau_list.empty() ? std::vector<double>{spec.base.tau} : spec.tau_list;

  struct Job {
    int n;
    double tau;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int n : ns)
    for (double tau : taus)
      for (int rep = 0; rep < spec.replicates; ++rep)
        jobs.push_back({n, tau, spec.seed0 + static_cast<std::uint64_t>(rep)});

  SweepOutcome out;
  out.points.resize(jobs.size());
  std::vector<char> have(jobs.size(), 0);
  for (size_t i = 0; i < jobs.size(); ++i) {
    for (const auto& d : done) {
      if (d.ok && d.n == jobs[i].n && d.seed == jobs[i].seed &&
          std::abs(d.tau - jobs[i].tau) < 1e-15) {
        out.points[i] = d;
        have[i] = 1;
        break;
      }
    }
  }

  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      if (have[i]) continue;
      out.points[i] = run_sweep_point(spec, jobs[i].n, jobs[i].tau, jobs[i].seed, k);
    }
  };
  workers = std::max(1, workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  detail::fit_sweep_slopes(out, spec);
  return out;
}

inline const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "n",      "tau",        "seed",          "J",
      "beta",   "T_cycle",    "phi_e_norm",    "bound_cycle",
      "m_star", "m_hat",      "d_dd_at_m_hat", "ok",
      "error",  "slope_m_star", "slope_m_hat", "slope_j"};
  return cols;
}

inline std::string sweep_csv(const SweepOutcome& out) {
  std::string s;
  const auto& cols = sweep_columns();
  for (size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
  s += "\n";
  for (const auto& p : out.points) {
    std::ostringstream row;
    row << p.n << "," << format_double(p.tau) << "," << p.seed << ","
        << format_double(p.J) << "," << format_double(p.beta) << ","
        << format_double(p.T_cycle) << "," << format_double(p.phi_e_norm) << ","
        << format_double(p.bound_cycle) << "," << p.m_star << "," << p.m_hat
        << "," << format_double(p.d_dd_at_m_hat) << "," << (p.ok ? 1 : 0) << ","
        << p.error << ",";
    if (out.slopes_valid)
      row << format_double(out.slope_m_star) << ","
          << format_double(out.slope_m_hat) << "," << format_double(out.slope_j);
    else
      row << "na,na,na";
    s += row.str() + "\n";
  }
  return s;
}

// Reads completed points back from a previous sweep CSV (slope columns are
// recomputed, error text is not preserved through a round trip).
inline std::vector<SweepPoint> read_sweep_csv(const std::string& path) {
  std::vector<SweepPoint> pts;
  std::ifstream in(path);
  if (!in) return pts;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first) {
      first = false;
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else
        cur += c;
    }
    f.push_back(cur);
    if (f.size() != sweep_columns().size()) continue;
    SweepPoint p;
    try {
      p.n = std::stoi(f[0]);
      p.tau = std::stod(f[1]);
      p.seed = static_cast<std::uint64_t>(std::stoull(f[2]));
      p.J = std::stod(f[3]);
      p.beta = std::stod(f[4]);
      p.T_cycle = std::stod(f[5]);
      p.phi_e_norm = std::stod(f[6]);
      p.bound_cycle = std::stod(f[7]);
      p.m_star = std::stoll(f[8]);
      p.m_hat = std::stoll(f[9]);
      p.d_dd_at_m_hat = std::stod(f[10]);
      p.ok = f[11] == "1";
    } catch (const std::exception&) {
      continue;
    }
    pts.push_back(p);
  }
  return pts;
}

}  // namespace ddsim

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "ddsim/ddsim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBoundViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;

void usage(std::ostream& os) {
  os << "usage:\n"
        "  ddsim simulate <config> [--constants file] [--json out.json] [--csv out.csv]\n"
        "  ddsim sweep <spec> [--constants file] [--out sweep.csv] [--workers k]\n"
        "  ddsim verify <suite> [--trials n] [--seed s]   suites: norms magnus lemmas\n"
        "                                                 decoupling evolution all\n"
        "  ddsim calibrate [--out constants.json] [--seed-base s]\n"
        "\n"
        "exit codes: 0 ok, 1 bound violation, 2 usage/parse error, 3 outside the\n"
        "convergence domain\n";
}

// --key value flags after the positional arguments
std::map<std::string, std::string> parse_flags(int argc, char** argv, int first,
                                               const std::vector<std::string>& known) {
  std::map<std::string, std::string> flags;
  for (int i = first; i < argc; ++i) {
    std::string a = argv[i];
    if (a.rfind("--", 0) != 0) throw ddsim::ConfigError("unexpected argument: " + a);
    std::string key = a.substr(2);
    bool ok = false;
    for (const auto& k : known) ok = ok || k == key;
    if (!ok) throw ddsim::ConfigError("unknown flag: --" + key);
    if (i + 1 >= argc) throw ddsim::ConfigError("flag --" + key + " needs a value");
    flags[key] = argv[++i];
  }
  return flags;
}

std::string today_iso() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%d", std::gmtime(&t));
  return buf;
}

std::string now_iso() {
  std::time_t t = std::time(nullptr);
  char buf[40];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

ddsim::BoundConstants constants_from_flag(const std::map<std::string, std::string>& flags) {
  std::string path = "configs/constants.json";
  if (auto it = flags.find("constants"); it != flags.end()) path = it->second;
  if (std::filesystem::exists(path)) return ddsim::load_constants(path);
  std::cerr << "note: constants file " << path
            << " not found, using uncalibrated defaults\n";
  return ddsim::BoundConstants{};
}

int cmd_simulate(const std::string& config_path,
                 const std::map<std::string, std::string>& flags) {
  ddsim::SimulationScenario sc;
  try {
    sc = ddsim::scenario_from_config(ddsim::parse_config_file(config_path));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  }
  ddsim::BoundConstants k = constants_from_flag(flags);

  ddsim::BoundReport rep;
  try {
    ddsim::Assembled a = ddsim::assemble(sc);
    ddsim::PddResult run = ddsim::run_pdd(a);
    ddsim::DistanceRecord dist = ddsim::final_state_distances(a, run);
    rep = ddsim::build_report(a, run, dist, k);
  } catch (const ddsim::ConvergenceError& e) {
    std::cerr << "convergence: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const ddsim::BranchCutError& e) {
    std::cerr << "convergence: principal branch unavailable: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string json_path = flags.count("json") ? flags.at("json") : "report.json";
  std::string csv_path = flags.count("csv") ? flags.at("csv") : "report.csv";

  ddsim::json j = ddsim::report_to_json(rep);
  ddsim::json wrapped;
  wrapped["timestamp"] = now_iso();
  for (auto& [key, val] : j.items()) wrapped[key] = val;
  std::ofstream jf(json_path);
  jf << wrapped.dump(2) << "\n";

  const bool fresh = !std::filesystem::exists(csv_path) ||
                     std::filesystem::file_size(csv_path) == 0;
  std::ofstream cf(csv_path, std::ios::app);
  if (fresh) cf << ddsim::report_csv_header() << "\n";
  cf << ddsim::report_csv_row(rep) << "\n";

  std::cout << "J=" << rep.J << " beta=" << rep.beta << " T=" << rep.T_cycle
            << " m=" << rep.m << "\n"
            << "phi_e=" << rep.phi_e_norm << " (bound " << rep.bound_phi_e << ")  "
            << "phi_pdd=" << rep.phi_pdd_norm << " (bound " << rep.bound_pdd << ")\n"
            << "d_dd=" << rep.d_dd << " (bound " << rep.bound_d_dd << ")  f_q="
            << rep.f_q << " (floor " << rep.fid_floor << ")\n"
            << "margin_min=" << rep.margin_min << "  "
            << (rep.all_pass ? "PASS" : "FAIL") << "\n";
  return rep.all_pass ? kExitOk : kExitBoundViolation;
}

int cmd_sweep(const std::string& spec_path,
              const std::map<std::string, std::string>& flags) {
  ddsim::SweepSpec spec;
  try {
    spec = ddsim::sweep_from_config(ddsim::parse_config_file(spec_path));
  } catch (const std::exception& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitUsage;
  }
  ddsim::BoundConstants k = constants_from_flag(flags);

  std::string out_path = flags.count("out") ? flags.at("out") : "sweep.csv";
  int workers = 1;
  if (const char* env = std::getenv("DDSIM_WORKERS")) workers = std::atoi(env);
  if (flags.count("workers")) workers = std::stoi(flags.at("workers"));

  std::vector<ddsim::SweepPoint> done = ddsim::read_sweep_csv(out_path);
  if (!done.empty())
    std::cout << "resuming: " << done.size() << " completed points found\n";
  ddsim::SweepOutcome out = ddsim::run_sweep(spec, k, done, workers);

  std::ofstream f(out_path);
  f << ddsim::sweep_csv(out);

  int failed = 0;
  for (const auto& p : out.points)
    if (!p.ok) ++failed;
  std::cout << out.points.size() << " grid points (" << failed << " failed)\n";
  if (out.slopes_valid)
    std::cout << "slope(log m_star / log n) = " << out.slope_m_star << "\n"
              << "slope(log m_hat  / log n) = " << out.slope_m_hat << "\n"
              << "slope(log J      / log n) = " << out.slope_j << "\n";
  else
    std::cout << "slopes: not applicable (need >= 2 usable n values)\n";
  return failed == 0 ? kExitOk : kExitBoundViolation;
}

int cmd_verify(const std::string& suite,
               const std::map<std::string, std::string>& flags) {
  int trials = flags.count("trials") ? std::stoi(flags.at("trials")) : 40;
  std::uint64_t seed = flags.count("seed") ? std::stoull(flags.at("seed")) : 1;
  std::vector<ddsim::SuiteResult> results;
  try {
    results = ddsim::verify_suites(suite, trials, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    usage(std::cerr);
    return kExitUsage;
  }
  bool all_ok = true;
  for (const auto& r : results) {
    std::cout << r.name << ": " << r.checks << " checks over " << r.trials
              << " trials, " << r.failures << " failures "
              << (r.ok() ? "[pass]" : "[FAIL]") << "\n";
    for (const auto& m : r.messages) std::cout << "  " << m << "\n";
    all_ok = all_ok && r.ok();
  }
  return all_ok ? kExitOk : kExitBoundViolation;
}

int cmd_calibrate(const std::map<std::string, std::string>& flags) {
  std::string out = flags.count("out") ? flags.at("out") : "constants.json";
  std::uint64_t base = flags.count("seed-base") ? std::stoull(flags.at("seed-base")) : 9001;
  ddsim::CalibrationResult r = ddsim::calibrate_constants(base, &std::cout);
  ddsim::write_constants(out, r, today_iso());
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    usage(std::cerr);
    return kExitUsage;
  }
  std::string cmd = argv[1];
  try {
    if (cmd == "simulate") {
      if (argc < 3) {
        usage(std::cerr);
        return kExitUsage;
      }
      auto flags = parse_flags(argc, argv, 3, {"constants", "json", "csv"});
      return cmd_simulate(argv[2], flags);
    }
    if (cmd == "sweep") {
      if (argc < 3) {
        usage(std::cerr);
        return kExitUsage;
      }
      auto flags = parse_flags(argc, argv, 3, {"constants", "out", "workers"});
      return cmd_sweep(argv[2], flags);
    }
    if (cmd == "verify") {
      if (argc < 3) {
        usage(std::cerr);
        return kExitUsage;
      }
      auto flags = parse_flags(argc, argv, 3, {"trials", "seed"});
      return cmd_verify(argv[2], flags);
    }
    if (cmd == "calibrate") {
      auto flags = parse_flags(argc, argv, 2, {"out", "seed-base"});
      return cmd_calibrate(flags);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << "unknown command: " << cmd << "\n";
  usage(std::cerr);
  return kExitUsage;
}

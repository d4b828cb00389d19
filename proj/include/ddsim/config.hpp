#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddsim/scenario.hpp"

namespace ddsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key = value format, one pair per line, '#' starts a comment.
inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto strip = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (kv.count(key)) throw ConfigError("duplicate key: " + key);
    kv[key] = val;
  }
  return kv;
}

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

namespace detail {

inline double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key " + key + ": not a number: " + v);
  }
}

inline long long to_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key " + key + ": not an integer: " + v);
  }
}

inline bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key " + key + ": not a boolean: " + v);
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ' && c != '\t') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace detail

// Populates a scenario from parsed keys; unknown keys are an error so typos
// fail loudly. Keys in `consumed` are skipped (used by sweep configs that
// layer extra keys on top of a scenario block).
inline SimulationScenario scenario_from_config(
    const std::map<std::string, std::string>& kv,
    const std::vector<std::string>& extra_keys = {}) {
  SimulationScenario sc;
  auto has_extra = [&](const std::string& k) {
    for (const auto& e : extra_keys)
      if (e == k) return true;
    return false;
  };
  for (const auto& [key, val] : kv) {
    using namespace detail;
    if (key == "n_sys") sc.n_sys = static_cast<int>(to_int(key, val));
    else if (key == "n_bath") sc.n_bath = static_cast<int>(to_int(key, val));
    else if (key == "heisenberg_j") sc.heisenberg_j = to_double(key, val);
    else if (key == "sb_scale") sc.sb_scale = to_double(key, val);
    else if (key == "bath_norm") sc.bath_norm = to_double(key, val);
    else if (key == "gate") {
      try {
        sc.gate = gate_from_name(val);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
    }
    else if (key == "theta") sc.theta = to_double(key, val);
    else if (key == "ctrl_rate") sc.ctrl_rate = to_double(key, val);
    else if (key == "group") sc.group = val;
    else if (key == "pulses") sc.pulse_labels = split_list(val);
    else if (key == "tau") sc.tau = to_double(key, val);
    else if (key == "delta") sc.delta = to_double(key, val);
    else if (key == "m") sc.m = static_cast<int>(to_int(key, val));
    else if (key == "seed") sc.seed = static_cast<std::uint64_t>(to_int(key, val));
    else if (key == "control_noise") sc.control_noise = to_double(key, val);
    else if (key == "ctrl_during_pulses") sc.ctrl_during_pulses = to_bool(key, val);
    else if (key == "per_qubit_model") sc.per_qubit_model = to_bool(key, val);
    else if (key == "init_system") {
      if (val == "plus") sc.init_system = InitSystem::Plus;
      else if (val == "zero") sc.init_system = InitSystem::Zero;
      else if (val == "random") sc.init_system = InitSystem::Random;
      else throw ConfigError("init_system: unknown value " + val);
    } else if (key == "init_bath") {
      if (val == "mixed") sc.init_bath = InitBath::Mixed;
      else if (val == "random") sc.init_bath = InitBath::Random;
      else throw ConfigError("init_bath: unknown value " + val);
    } else if (!has_extra(key)) {
      throw ConfigError("unknown key: " + key);
    }
  }
  sc.validate();
  return sc;
}

// Sweep description: scale system size and/or pulse interval, replicate over
// seeds, and solve for the cycle count that reaches a target error.
struct SweepSpec {
  SimulationScenario base;
  std::vector<int> n_list;
  std::vector<double> tau_list;
  int replicates = 3;
  std::uint64_t seed0 = 1;
  double target_error = 0.1;

  void validate() const {
    if (n_list.empty() && tau_list.empty())
      throw ConfigError("sweep needs n_list or tau_list");
    if (replicates < 1) throw ConfigError("replicates must be positive");
    if (!(target_error > 0.0 && target_error < 1.0))
      throw ConfigError("target_error must lie in (0,1)");
  }
};

inline SweepSpec sweep_from_config(const std::map<std::string, std::string>& kv) {
  static const std::vector<std::string> own = {"n_list", "tau_list", "replicates",
                                               "seed0", "target_error"};
  SweepSpec sw;
  sw.base = scenario_from_config(kv, own);
  using namespace detail;
  if (auto it = kv.find("n_list"); it != kv.end())
    for (const auto& s : split_list(it->second))
      sw.n_list.push_back(static_cast<int>(to_int("n_list", s)));
  if (auto it = kv.find("tau_list"); it != kv.end())
    for (const auto& s : split_list(it->second))
      sw.tau_list.push_back(to_double("tau_list", s));
  if (auto it = kv.find("replicates"); it != kv.end())
    sw.replicates = static_cast<int>(to_int("replicates", it->second));
  if (auto it = kv.find("seed0"); it != kv.end())
    sw.seed0 = static_cast<std::uint64_t>(to_int("seed0", it->second));
  if (auto it = kv.find("target_error"); it != kv.end())
    sw.target_error = to_double("target_error", it->second);
  sw.validate();
  return sw;
}

}  // namespace ddsim

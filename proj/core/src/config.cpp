#include "sqg/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sqg/errors.hpp"

namespace sqg {
namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

const std::vector<std::string>& config_schema() {
  static const std::vector<std::string> keys = {
      "grid.nx", "grid.ny",
      "params.kappa", "params.gamma", "params.mu", "params.sigma", "params.p",
      "forcing.amplitude", "forcing.kx", "forcing.ky",
      "obs.kind", "obs.n", "obs.n_list",
      "twin.t_spin", "twin.t_assim", "twin.dt", "twin.linear_only",
      "twin.eta0", "twin.tail_fraction", "twin.theta0_zero",
      "sim.t_end",
      "sweep.mu_list", "sweep.n_list",
      "stream.n_fields", "stream.z_max", "stream.levels",
      "output.cadence", "output.dir", "output.snapshot_cadence",
  };
  return keys;
}

Config Config::parse_text(const std::string& text, const std::string& name) {
  Config cfg;
  cfg.path_ = name;
  char hex[24];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64(text)));
  cfg.hash_ = hex;
  const auto& schema = config_schema();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(name + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (std::find(schema.begin(), schema.end(), key) == schema.end())
      throw ConfigError(name + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (cfg.kv_.count(key))
      throw ConfigError(name + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.kv_[key] = val;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  Config cfg = parse_text(ss.str(), path);
  cfg.path_ = path;
  return cfg;
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

std::string Config::require_string(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing required config key '" + key + "'");
  return it->second;
}

double Config::require_double(const std::string& key) const {
  const std::string v = require_string(key);
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + v + "' as a number");
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? require_double(key) : fallback;
}

int Config::get_int(const std::string& key, int fallback) const {
  if (!has(key)) return fallback;
  double d = require_double(key);
  int i = static_cast<int>(d);
  if (double(i) != d) throw ConfigError("config key '" + key + "': expected an integer");
  return i;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  std::string v = require_string(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean");
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  if (!has(key)) return out;
  std::istringstream ss(require_string(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': cannot parse '" + item + "'");
    }
  }
  return out;
}

std::vector<int> Config::get_int_list(const std::string& key) const {
  std::vector<int> out;
  for (double d : get_double_list(key)) {
    int i = static_cast<int>(d);
    if (double(i) != d) throw ConfigError("config key '" + key + "': expected integers");
    out.push_back(i);
  }
  return out;
}

ForcingSpec forcing_from(const Config& cfg) {
  double amp = cfg.get_double("forcing.amplitude", 0.0);
  if (amp == 0.0) return {};
  return ForcingSpec::single_shell(cfg.get_int("forcing.kx", 2), cfg.get_int("forcing.ky", 1),
                                   amp);
}

TwinExperimentConfig twin_config_from(const Config& cfg, std::uint64_t seed) {
  TwinExperimentConfig t;
  int nx = cfg.get_int("grid.nx", 0);
  if (nx == 0) throw ConfigError("missing required config key 'grid.nx'");
  int ny = cfg.get_int("grid.ny", nx);
  t.grid = GridSpec(nx, ny);
  t.params.kappa = cfg.require_double("params.kappa");
  t.params.gamma = cfg.require_double("params.gamma");
  t.params.mu = cfg.get_double("params.mu", 0.0);
  t.params.forcing = forcing_from(cfg);
  t.params.validate();
  t.sigma = cfg.get_double("params.sigma", 1.0);
  t.monitor_p = cfg.get_double("params.p", 8.0);
  t.obs_kind = obs_kind_from_name(cfg.get_string("obs.kind", "rough_modal"));
  t.obs_n = cfg.get_int("obs.n", 0);
  t.spin_up_time = cfg.get_double("twin.t_spin", 0.0);
  t.assimilation_time = cfg.get_double("twin.t_assim", 0.0);
  t.dt = cfg.get_double("twin.dt", 0.0);
  t.linear_only = cfg.get_bool("twin.linear_only", false);
  t.theta0_zero = cfg.get_bool("twin.theta0_zero", false);
  t.tail_fraction = cfg.get_double("twin.tail_fraction", 0.25);
  std::string eta0 = cfg.get_string("twin.eta0", "zero");
  if (eta0 == "zero") t.eta0_policy = TwinExperimentConfig::Eta0Policy::Zero;
  else if (eta0 == "random") t.eta0_policy = TwinExperimentConfig::Eta0Policy::RandomMeanZero;
  else throw ConfigError("twin.eta0 must be 'zero' or 'random'");
  t.record_cadence = cfg.get_double("output.cadence", 0.05);
  t.seed = seed;
  return t;
}

}  // namespace sqg

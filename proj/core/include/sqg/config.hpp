#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sqg/assimilation.hpp"

namespace sqg {

/// Flat key-value run configuration ("key = value" lines, '#' comments).
/// Keys outside the documented schema are rejected by name.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text, const std::string& name = "<inline>");

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::string require_string(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;
  std::vector<int> get_int_list(const std::string& key) const;

  const std::string& path() const { return path_; }
  /// FNV-1a hash of the raw file bytes, as 16 hex digits.
  const std::string& content_hash() const { return hash_; }
  const std::map<std::string, std::string>& items() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
  std::string path_;
  std::string hash_;
};

/// The documented configuration schema shared by all subcommands.
const std::vector<std::string>& config_schema();

/// Assembles the twin-experiment description from a parsed config.
/// `seed` comes from the command line and overrides nothing in the file.
TwinExperimentConfig twin_config_from(const Config& cfg, std::uint64_t seed);

ForcingSpec forcing_from(const Config& cfg);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace sqg

#pragma once

#include <string>
#include <vector>

namespace sqg {

/// Record of one CLI run: resolved inputs, wall-time span, emitted files.
/// Written to <out_dir>/manifest.txt even when the run fails.
struct RunManifest {
  std::string subcommand;
  std::string config_path;
  std::string config_hash;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::string> config_echo;  // resolved key = value lines
  std::vector<std::string> files;        // emitted files, relative to out_dir
  bool ok = false;
  std::string failure;

  void add_file(const std::string& relpath) { files.push_back(relpath); }
  void write(const std::string& out_dir) const;
};

std::string utc_now_string();

}  // namespace sqg

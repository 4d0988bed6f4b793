#include "sqg/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "sqg/errors.hpp"
#include "sqg/version.hpp"

namespace sqg {

std::string utc_now_string() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::write(const std::string& out_dir) const {
  std::string path = out_dir + "/manifest.txt";
  std::ofstream os(path);
  if (!os) throw IoError("cannot write manifest: " + path);
  os << "artifact_version = " << kVersion << "\n";
  os << "subcommand = " << subcommand << "\n";
  os << "config = " << config_path << "\n";
  os << "config_hash = " << config_hash << "\n";
  os << "started_utc = " << started_utc << "\n";
  os << "finished_utc = " << finished_utc << "\n";
  os << "status = " << (ok ? "ok" : ("failed: " + failure)) << "\n";
  for (const auto& line : config_echo) os << "config_echo: " << line << "\n";
  for (const auto& f : files) os << "file = " << f << "\n";
  if (!os) throw IoError("short write on manifest: " + path);
}

}  // namespace sqg

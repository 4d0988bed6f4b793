// End-to-end checks of the sqg binary: exit codes, emitted files, manifest
// completeness, and byte-identical reruns. The binary path comes from CMake.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

CmdResult run_cli(const std::string& args) {
  fs::path log = fs::temp_directory_path() / "sqg_cli_log.txt";
  std::string cmd = std::string(SQG_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  return {WEXITSTATUS(rc), ss.str()};
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kTwinCfg = R"(
grid.nx = 32
params.kappa = 0.05
params.gamma = 1.5
params.mu = 5
forcing.amplitude = 0.05
forcing.kx = 2
forcing.ky = 1
obs.kind = rough_modal
obs.n = 6
twin.t_spin = 1
twin.t_assim = 2
twin.dt = 0.01
output.cadence = 0.1
)";

}  // namespace

TEST_CASE("grid-info prints the dealias summary and writes nothing") {
  fs::path cfg = write_config("sqg_gridinfo.cfg", "grid.nx = 128\n");
  auto res = run_cli("grid-info --config " + cfg.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("|k1| <= 42") != std::string::npos);
}

TEST_CASE("twin run: exit 0, manifest matches the files on disk, reruns are identical") {
  fs::path cfg = write_config("sqg_twin.cfg", kTwinCfg);
  fs::path out1 = fs::temp_directory_path() / "sqg_cli_twin1";
  fs::path out2 = fs::temp_directory_path() / "sqg_cli_twin2";
  fs::remove_all(out1);
  fs::remove_all(out2);
  auto r1 = run_cli("twin --config " + cfg.string() + " --out " + out1.string() + " --seed 7");
  CHECK(r1.exit_code == 0);
  CHECK(fs::exists(out1 / "twin_series.csv"));
  CHECK(fs::exists(out1 / "twin_report.txt"));
  CHECK(fs::exists(out1 / "manifest.txt"));

  // manifest completeness: listed files == files on disk minus the manifest
  std::set<std::string> listed;
  std::ifstream min(out1 / "manifest.txt");
  std::string line;
  bool ok_status = false;
  while (std::getline(min, line)) {
    if (line.rfind("file = ", 0) == 0) listed.insert(line.substr(7));
    if (line == "status = ok") ok_status = true;
  }
  CHECK(ok_status);
  std::set<std::string> on_disk;
  for (const auto& e : fs::directory_iterator(out1)) {
    std::string name = e.path().filename().string();
    if (name != "manifest.txt") on_disk.insert(name);
  }
  CHECK(listed == on_disk);

  auto r2 = run_cli("twin --config " + cfg.string() + " --out " + out2.string() + " --seed 7");
  CHECK(r2.exit_code == 0);
  CHECK(slurp(out1 / "twin_series.csv") == slurp(out2 / "twin_series.csv"));
  fs::remove_all(out1);
  fs::remove_all(out2);
}

TEST_CASE("invalid gamma exits 1 and cites the admissible range") {
  std::string bad = std::string(kTwinCfg);
  bad.replace(bad.find("params.gamma = 1.5"), 18, "params.gamma = 3.0");
  fs::path cfg = write_config("sqg_badgamma.cfg", bad);
  fs::path out = fs::temp_directory_path() / "sqg_cli_badgamma";
  fs::remove_all(out);
  auto res = run_cli("twin --config " + cfg.string() + " --out " + out.string());
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("(0, 2]") != std::string::npos);
  // manifest is written even on failure
  CHECK(fs::exists(out / "manifest.txt"));
  CHECK(slurp(out / "manifest.txt").find("status = failed") != std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("unknown config key exits 1 and names the key") {
  fs::path cfg = write_config("sqg_badkey.cfg", "grid.nx = 32\nsolver.scheme = rk4\n");
  fs::path out = fs::temp_directory_path() / "sqg_cli_badkey";
  fs::remove_all(out);
  auto res = run_cli("twin --config " + cfg.string() + " --out " + out.string());
  CHECK(res.exit_code == 1);
  CHECK(res.output.find("solver.scheme") != std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("output.dir from the config is honored when --out is absent") {
  fs::path dir = fs::temp_directory_path() / "sqg_cli_outdir";
  fs::remove_all(dir);
  std::string cfg_text = std::string(kTwinCfg) + "output.dir = " + dir.string() + "\n";
  fs::path cfg = write_config("sqg_outdir.cfg", cfg_text);
  auto res = run_cli("twin --config " + cfg.string());
  CHECK(res.exit_code == 0);
  CHECK(fs::exists(dir / "twin_series.csv"));
  CHECK(fs::exists(dir / "manifest.txt"));
  fs::remove_all(dir);
}

TEST_CASE("missing config file exits 3") {
  auto res = run_cli("twin --config /nonexistent/sqg.cfg --out " +
                     (fs::temp_directory_path() / "sqg_cli_noconf").string());
  CHECK(res.exit_code == 3);
}

TEST_CASE("props subcommand: rough modal commutators all pass") {
  fs::path cfg = write_config("sqg_props.cfg",
                              "grid.nx = 64\nobs.kind = rough_modal\nobs.n_list = 4,6,8,12\n");
  fs::path out = fs::temp_directory_path() / "sqg_cli_props";
  fs::remove_all(out);
  auto res = run_cli("props --config " + cfg.string() + " --out " + out.string());
  CHECK(res.exit_code == 0);
  std::string csv = slurp(out / "props_rough_modal.csv");
  CHECK(!csv.empty());
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "property_id,h,lhs,rhs,ratio,fitted_slope,fitted_constant,pass");
  int rows22 = 0;
  while (std::getline(in, line)) {
    if (line.rfind("2.2", 0) == 0) {
      ++rows22;
      CHECK(line.back() == '1');  // pass column
    }
  }
  CHECK(rows22 > 0);
  fs::remove_all(out);
}

TEST_CASE("sweep subcommand emits the table and reports minimal N") {
  std::string cfg_text = R"(
grid.nx = 32
params.kappa = 0.05
params.gamma = 1.5
forcing.amplitude = 0.05
forcing.kx = 2
forcing.ky = 1
obs.kind = rough_modal
twin.t_spin = 1
twin.t_assim = 2
twin.dt = 0.01
sweep.mu_list = 0, 5
sweep.n_list = 2, 4
output.cadence = 0.1
)";
  fs::path cfg = write_config("sqg_sweep.cfg", cfg_text);
  fs::path out = fs::temp_directory_path() / "sqg_cli_sweep";
  fs::remove_all(out);
  auto res = run_cli("sweep --config " + cfg.string() + " --out " + out.string() +
                     " --threads 2");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("mu = 0:") != std::string::npos);
  std::string csv = slurp(out / "sweep.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "mu,resolution,h,rho,r1,r2,fitted_rate,r_squared,synchronized");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);
  fs::remove_all(out);
}

TEST_CASE("simulate emits series and snapshots that reload bit-exactly") {
  std::string cfg_text = R"(
grid.nx = 32
params.kappa = 0.1
params.gamma = 1.5
forcing.amplitude = 0.05
forcing.kx = 2
forcing.ky = 1
twin.dt = 0.01
sim.t_end = 0.5
output.cadence = 0.1
output.snapshot_cadence = 0.25
)";
  fs::path cfg = write_config("sqg_sim.cfg", cfg_text);
  fs::path out = fs::temp_directory_path() / "sqg_cli_sim";
  fs::remove_all(out);
  auto res = run_cli("simulate --config " + cfg.string() + " --out " + out.string());
  CHECK(res.exit_code == 0);
  CHECK(fs::exists(out / "series.csv"));
  CHECK(fs::exists(out / "snap_000000.sqgf"));
  fs::remove_all(out);
}

// Command-line driver: reference runs, twin experiments, parameter sweeps,
// observation-operator property suites, and streamfunction oracle checks.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sqg/assimilation.hpp"
#include "sqg/config.hpp"
#include "sqg/csv.hpp"
#include "sqg/errors.hpp"
#include "sqg/manifest.hpp"
#include "sqg/properties.hpp"
#include "sqg/rng.hpp"
#include "sqg/snapshot.hpp"
#include "sqg/spectral_ops.hpp"
#include "sqg/streamfunction.hpp"
#include "sqg/version.hpp"

namespace fs = std::filesystem;
using namespace sqg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitIo = 3;

struct CliArgs {
  std::string config_path;
  std::string out_dir = "./out";
  std::uint64_t seed = 0;
  int threads = 0;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open output file: " + path);
  return os;
}

void echo_config(const Config& cfg, RunManifest& manifest) {
  for (const auto& [k, v] : cfg.items()) manifest.config_echo.push_back(k + " = " + v);
}

int cmd_grid_info(const CliArgs& args) {
  Config cfg = Config::parse_file(args.config_path);
  int nx = cfg.get_int("grid.nx", 0);
  if (nx == 0) throw ConfigError("missing required config key 'grid.nx'");
  GridSpec grid(nx, cfg.get_int("grid.ny", nx));
  int cx = grid.dealias_cut_x(), cy = grid.dealias_cut_y();
  long retained = (2L * cx + 1) * (2L * cy + 1);
  std::printf("grid %d x %d on [-pi, pi)^2\n", grid.nx, grid.ny);
  std::printf("dx = %.10g  dy = %.10g\n", grid.dx(), grid.dy());
  std::printf("wavenumbers: k1 in [%d, %d], k2 in [%d, %d]\n", -grid.nx / 2 + 1, grid.nx / 2,
              -grid.ny / 2 + 1, grid.ny / 2);
  std::printf("dealias band (2/3 rule): |k1| <= %d, |k2| <= %d (%ld modes retained)\n", cx, cy,
              retained);
  return kExitOk;
}

SimState simulate_initial_state(const TwinExperimentConfig& twin) {
  SimState s;
  s.time = 0.0;
  if (twin.theta0_zero) {
    s.theta = SpectralField(twin.grid);
    s.theta.set_mean_zero_flag(true);
  } else {
    s.theta = random_band_limited(twin.grid, 1.0, 6.0, 2.0, twin.seed);
    double n = l2_norm(s.theta);
    if (n > 0) s.theta *= 1.0 / n;
  }
  return s;
}

int cmd_simulate(const CliArgs& args, RunManifest& manifest) {
  Config cfg = Config::parse_file(args.config_path);
  echo_config(cfg, manifest);
  TwinExperimentConfig twin = twin_config_from(cfg, args.seed);
  double t_end = cfg.require_double("sim.t_end");
  if (t_end <= 0.0) throw ConfigError("sim.t_end must be positive");
  double snap_cadence = cfg.get_double("output.snapshot_cadence", 0.0);

  SqgStepper stepper(twin.grid, {twin.params.kappa, twin.params.gamma, 0.0, twin.params.forcing},
                     {twin.dt, twin.linear_only});
  SimState state = simulate_initial_state(twin);

  auto series = open_out(args.out_dir + "/series.csv");
  manifest.add_file("series.csv");
  series << "t,theta_l2,theta_lp,theta_hsigma\n";
  int snap_index = 0;
  auto series_obs = RunObserver{twin.record_cadence, [&](const SimState& s) {
    series << csv_double(s.time) << ',' << csv_double(l2_norm(s.theta)) << ','
           << csv_double(lp_norm(s.theta, twin.monitor_p)) << ','
           << csv_double(hs_norm(s.theta, twin.sigma)) << '\n';
  }};
  std::vector<RunObserver> observers{series_obs};
  if (snap_cadence > 0.0) {
    observers.push_back(RunObserver{snap_cadence, [&](const SimState& s) {
      char name[64];
      std::snprintf(name, sizeof(name), "snap_%06d.sqgf", snap_index++);
      write_snapshot(args.out_dir + "/" + name,
                     Snapshot{twin.grid, s.time, twin.params.kappa, twin.params.gamma,
                              to_physical(s.theta)});
      manifest.add_file(name);
    }});
  }
  RunResult res = run(stepper, std::move(state), t_end, observers, twin.record_cadence);
  if (res.diverged) {
    manifest.failure = res.error;
    std::fprintf(stderr, "divergence: %s\n", res.error.c_str());
    return kExitDivergence;
  }
  return kExitOk;
}

void write_twin_report(std::ostream& os, const SyncDiagnostics& d) {
  auto fit_line = [&](const char* name, const DecayFit& f) {
    os << name << "_rate = " << csv_double(f.rate) << "\n"
       << name << "_r_squared = " << csv_double(f.r_squared) << "\n"
       << name << "_degenerate = " << (f.degenerate ? 1 : 0) << "\n";
  };
  fit_line("fit_l2", d.fit_l2);
  fit_line("fit_hsigma", d.fit_hsigma);
  fit_line("fit_hminushalf", d.fit_hminushalf);
  fit_line("fit_streamgrad", d.fit_streamgrad);
  os << "final_relative_error = " << csv_double(d.final_relative_error) << "\n";
  os << "synchronized = " << (d.synchronized ? 1 : 0) << "\n";
  const TheoryBounds& b = d.bounds;
  os << "F_h_minus_gamma_half = " << csv_double(b.f_h_minus_gamma2) << "\n";
  os << "F_lp = " << csv_double(b.f_lp) << "\n";
  os << "Theta_l2 = " << csv_double(b.theta_l2) << "\n";
  os << "Theta_lp = " << csv_double(b.theta_lp) << "\n";
  os << "Theta_hsigma = " << csv_double(b.theta_hsigma) << "\n";
  os << "h = " << csv_double(b.h) << "\n";
  os << "rho = " << csv_double(b.rho) << "\n";
  os << "R_l2 = " << csv_double(b.r_l2()) << "\n";
  os << "R_lp = " << csv_double(b.r_lp()) << "\n";
  os << "R_hsigma = " << csv_double(b.r_hsigma()) << "\n";
  os << "Xi_p_gamma_half = " << csv_double(b.xi_monitor()) << "\n";
  const ConditionReport& c = d.conditions;
  os << "r1_mu_hgamma_over_kappa = " << csv_double(c.r1) << "\n";
  os << "r1_satisfied_at_C1 = " << (c.r1_satisfied ? 1 : 0) << "\n";
  os << "mu_rho_over_kappa = " << csv_double(c.mu_rho_over_kappa) << "\n";
  os << "rho_satisfied_at_C1 = " << (c.rho_satisfied ? 1 : 0) << "\n";
  os << "r2 = " << csv_double(c.r2) << "\n";
  os << "r2_applicable = " << (c.r2_applicable ? 1 : 0) << "\n";
  os << "r2_satisfied_at_C1 = " << (c.r2_satisfied ? 1 : 0) << "\n";
  os << "caveat = " << c.caveat << "\n";
}

void warn_hypotheses(const TwinExperimentConfig& twin) {
  if (twin.params.subcritical_warning())
    std::fprintf(stderr, "warning: gamma = %g is at or below 1; the subcritical analysis "
                         "assumes gamma in (1, 2]\n", twin.params.gamma);
  if (!twin.sigma_admissible())
    std::fprintf(stderr, "warning: sigma = %g violates sigma > 2 - gamma\n", twin.sigma);
}

int cmd_twin(const CliArgs& args, RunManifest& manifest) {
  Config cfg = Config::parse_file(args.config_path);
  echo_config(cfg, manifest);
  TwinExperimentConfig twin = twin_config_from(cfg, args.seed);
  warn_hypotheses(twin);
  SyncDiagnostics d = run_twin(twin);
  {
    auto os = open_out(args.out_dir + "/twin_series.csv");
    manifest.add_file("twin_series.csv");
    d.write_series_csv(os);
  }
  {
    auto os = open_out(args.out_dir + "/twin_report.txt");
    manifest.add_file("twin_report.txt");
    write_twin_report(os, d);
  }
  if (d.diverged) {
    manifest.failure = d.error;
    std::fprintf(stderr, "divergence: %s\n", d.error.c_str());
    return kExitDivergence;
  }
  std::printf("synchronized = %s, final relative L2 error = %s\n",
              d.synchronized ? "yes" : "no", csv_double(d.final_relative_error).c_str());
  return kExitOk;
}

int cmd_sweep(const CliArgs& args, RunManifest& manifest) {
  Config cfg = Config::parse_file(args.config_path);
  echo_config(cfg, manifest);
  TwinExperimentConfig base = twin_config_from(cfg, args.seed);
  warn_hypotheses(base);
  std::vector<double> mu_grid = cfg.get_double_list("sweep.mu_list");
  std::vector<int> n_grid = cfg.get_int_list("sweep.n_list");
  if (base.obs_n == 0) base.obs_n = n_grid.empty() ? 0 : n_grid.front();
  SpinUpResult ref = spin_up(base);
  if (!ref.stationary)
    std::fprintf(stderr, "warning: spin-up tail drifted %.1f%%; Theta suprema may be biased\n",
                 100.0 * ref.drift);
  SweepTable table = parameter_sweep(base, ref, mu_grid, n_grid, args.threads);
  auto os = open_out(args.out_dir + "/sweep.csv");
  manifest.add_file("sweep.csv");
  table.write_csv(os);
  for (double mu : mu_grid) {
    auto nstar = table.minimal_synchronizing_resolution(mu);
    if (nstar)
      std::printf("mu = %g: minimal synchronizing N = %d\n", mu, *nstar);
    else
      std::printf("mu = %g: no synchronizing resolution in the grid\n", mu);
  }
  if (base.params.gamma > 1.0) {
    // determining-modes scale for comparison with N*, reported not asserted
    double scale = std::pow(ref.theta_linf / base.params.kappa, 1.0 / (base.params.gamma - 1.0));
    std::printf("(Theta_inf/kappa)^{1/(gamma-1)} = %.3g at gamma = %g\n", scale,
                base.params.gamma);
  }
  return kExitOk;
}

int cmd_props(const CliArgs& args, RunManifest& manifest) {
  Config cfg = Config::parse_file(args.config_path);
  echo_config(cfg, manifest);
  int nx = cfg.get_int("grid.nx", 0);
  if (nx == 0) throw ConfigError("missing required config key 'grid.nx'");
  GridSpec grid(nx, cfg.get_int("grid.ny", nx));
  ObsKind kind = obs_kind_from_name(cfg.require_string("obs.kind"));
  std::vector<int> n_list = cfg.get_int_list("obs.n_list");
  if (n_list.empty()) throw ConfigError("props needs obs.n_list (>= 4 resolutions)");
  PropertyTestFields fields = PropertyTestFields::standard(grid, args.seed);
  PropertyReport report = verify_properties(kind, n_list, grid, fields);
  std::string name = "props_" + obs_kind_name(kind) + ".csv";
  auto os = open_out(args.out_dir + "/" + name);
  manifest.add_file(name);
  report.write_csv(os);
  int passed = 0;
  for (const auto& r : report.records) passed += r.pass ? 1 : 0;
  std::printf("%d/%zu properties passed\n", passed, report.records.size());
  return kExitOk;
}

int cmd_stream_diag(const CliArgs& args, RunManifest& manifest) {
  Config cfg = Config::parse_file(args.config_path);
  echo_config(cfg, manifest);
  int nx = cfg.get_int("grid.nx", 64);
  GridSpec grid(nx, cfg.get_int("grid.ny", nx));
  int n_fields = cfg.get_int("stream.n_fields", 100);
  auto spec = StreamExtensionSpec::standard(cfg.get_double("stream.z_max", 18.5),
                                            cfg.get_int("stream.levels", 8001));
  auto os = open_out(args.out_dir + "/stream_diag.csv");
  manifest.add_file("stream_diag.csv");
  os << "field_index,exact,quadrature,rel_err\n";
  double worst = 0.0;
  for (int i = 0; i < n_fields; ++i) {
    SpectralField zeta = random_band_limited(grid, 1.0, 8.0, 1.0, args.seed + i);
    double exact = gradient_error_exact(zeta);
    double quad = gradient_error_quadrature(zeta, spec);
    double rel = exact > 0 ? std::abs(quad - exact) / exact : 0.0;
    worst = std::max(worst, rel);
    os << i << ',' << csv_double(exact) << ',' << csv_double(quad) << ',' << csv_double(rel)
       << '\n';
  }
  std::printf("max relative deviation over %d fields: %s\n", n_fields,
              csv_double(worst).c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral SQG solver with feedback-nudging data assimilation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CliArgs args;
  const char* names[] = {"simulate", "twin", "sweep", "props", "stream-diag", "grid-info"};
  const char* descs[] = {
      "integrate the reference equation, emit norm series and optional snapshots",
      "full twin experiment with synchronization diagnostics",
      "twin experiments over a (mu, resolution) grid",
      "observation-operator property suite",
      "streamfunction gradient-error oracle equivalence report",
      "print grid/wavenumber/dealias summary"};
  for (int i = 0; i < 6; ++i) {
    auto* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("--config", args.config_path, "run configuration file")->required();
    sub->add_option("--out", args.out_dir, "output directory (default ./out)");
    sub->add_option("--seed", args.seed, "base RNG seed (default 0)");
    sub->add_option("--threads", args.threads, "worker threads for sweeps (default all)");
  }

  CLI11_PARSE(app, argc, argv);
  const CLI::App* active = app.get_subcommands().front();
  std::string sub = active->get_name();

  if (sub == "grid-info") {
    try {
      return cmd_grid_info(args);
    } catch (const IoError& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return kExitIo;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return kExitConfig;
    }
  }

  RunManifest manifest;
  manifest.subcommand = sub;
  manifest.config_path = args.config_path;
  manifest.started_utc = utc_now_string();
  int code = kExitOk;
  try {
    {
      Config cfg = Config::parse_file(args.config_path);
      manifest.config_hash = cfg.content_hash();
      // --out wins over the config's output.dir, which wins over ./out
      if (active->count("--out") == 0)
        args.out_dir = cfg.get_string("output.dir", args.out_dir);
    }
    std::error_code ec;
    fs::create_directories(args.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + args.out_dir);
    if (sub == "simulate") code = cmd_simulate(args, manifest);
    else if (sub == "twin") code = cmd_twin(args, manifest);
    else if (sub == "sweep") code = cmd_sweep(args, manifest);
    else if (sub == "props") code = cmd_props(args, manifest);
    else if (sub == "stream-diag") code = cmd_stream_diag(args, manifest);
    manifest.ok = code == kExitOk;
  } catch (const DivergenceError& e) {
    manifest.failure = e.what();
    std::fprintf(stderr, "divergence: %s\n", e.what());
    code = kExitDivergence;
  } catch (const IoError& e) {
    manifest.failure = e.what();
    std::fprintf(stderr, "io error: %s\n", e.what());
    code = kExitIo;
  } catch (const std::exception& e) {
    manifest.failure = e.what();
    std::fprintf(stderr, "error: %s\n", e.what());
    code = kExitConfig;
  }
  manifest.finished_utc = utc_now_string();
  try {
    manifest.write(args.out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cannot write manifest: %s\n", e.what());
    if (code == kExitOk) code = kExitIo;
  }
  return code;
}

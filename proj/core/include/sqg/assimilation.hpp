#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sqg/dynamics.hpp"
#include "sqg/fit.hpp"
#include "sqg/observation.hpp"

namespace sqg {

/// Full description of a twin experiment: spin up a reference solution, then
/// co-integrate the nudged system against it and record synchronization error.
struct TwinExperimentConfig {
  enum class Eta0Policy { Zero, RandomMeanZero, Supplied };

  GridSpec grid;
  PhysicalParams params;
  ObsKind obs_kind = ObsKind::RoughModal;
  int obs_n = 0;

  double spin_up_time = 0.0;
  double assimilation_time = 0.0;
  double dt = 0.0;
  bool linear_only = false;
  bool theta0_zero = false;  // start the reference at 0 (exact-rate verification runs)

  Eta0Policy eta0_policy = Eta0Policy::Zero;
  std::optional<SpectralField> eta0;

  double record_cadence = 0.05;
  double sigma = 1.0;       // Sobolev index of the recorded H^sigma error norm
  double monitor_p = 8.0;   // Lebesgue exponent for Theta_Lp and the mu condition
  double tail_fraction = 0.25;
  std::uint64_t seed = 0;

  void validate() const;
  /// (H2) requires sigma > 2 - gamma.
  bool sigma_admissible() const { return sigma > 2.0 - params.gamma; }
  /// (H3) requires 1 - sigma < 2/p < gamma - 1.
  bool p_admissible() const {
    double two_over_p = 2.0 / monitor_p;
    return 1.0 - sigma < two_over_p && two_over_p < params.gamma - 1.0;
  }
};

struct SpinUpResult {
  SimState state;
  double theta_l2 = 0.0;      // sup of ||theta||_L2 over the spin-up tail
  double theta_lp = 0.0;      // sup of ||theta||_Lp, p = monitor_p
  double theta_l4 = 0.0;
  double theta_linf = 0.0;    // grid max
  double theta_hsigma = 0.0;  // sup of ||theta||_{H^sigma}
  bool stationary = true;     // L2 drift over the tail within 5%
  double drift = 0.0;
};

/// Integrates the reference equation from the default band-limited seed
/// (or from zero when theta0_zero) and measures the Theta suprema over the
/// trailing tail_fraction of the run.
SpinUpResult spin_up(const TwinExperimentConfig& cfg);

/// Diagnostic quantities of the synchronization analysis, evaluated on a run
/// with reference constant C = 1 (the analysis constants are existential).
struct TheoryBounds {
  double f_h_minus_gamma2 = 0.0;      // ||f||_{H^{-gamma/2}} / kappa
  double f_lp = 0.0;                  // ||f||_{Lp} / kappa
  double f_h_sigma_minus_gamma2 = 0;  // ||f||_{H^{sigma-gamma/2}} / kappa
  double theta_l2 = 0.0;              // measured sup over the spin-up tail
  double theta_lp = 0.0;
  double theta_hsigma = 0.0;
  double h = 0.0;
  double sigma = 0.0;
  double gamma = 0.0;
  double kappa = 0.0;
  double mu = 0.0;
  double p = 0.0;
  double rho = 0.0;                   // h^{2 sigma} if sigma <= gamma/2, else h^gamma
  bool p_admissible = false;

  /// Absorbing-radius and nonlinearity monitors (C = 1; infinite when mu = 0).
  double r_l2() const;       // sqrt((kappa/mu) F_{H^{-gamma/2}}^2 + Theta_L2^2)
  double r_lp() const;       // ((kappa/mu)^p F_Lp^p + Theta_Lp^p)^{1/p}
  double r_hsigma() const;   // sqrt((kappa/mu) F_{H^{sigma-gamma/2}}^2 + Theta_Hsigma^2)
  double xi_monitor() const; // (Theta_Lp / kappa)^{gamma/(gamma-1-2/p)}
};

TheoryBounds evaluate_theory_bounds(const TwinExperimentConfig& cfg, const SpinUpResult& ref);

/// rho(h, sigma, gamma) piecewise form.
double rho_resolution(double h, double sigma, double gamma);

struct ConditionReport {
  double r1 = 0.0;                // mu h^gamma / kappa
  double mu_rho_over_kappa = 0.0;
  double r2 = 0.0;                // (kappa/mu) (Theta_Lp/kappa)^{gamma/(gamma-1-2/p)}
  bool r1_satisfied = false;      // against threshold 1 (reference constant C = 1)
  bool rho_satisfied = false;
  bool r2_satisfied = false;
  bool r2_applicable = false;     // false when p violates (H3) or mu = 0
  std::string caveat;
};

ConditionReport check_conditions(const TheoryBounds& bounds);

using FitResult = LinearFit;  // rate = -slope of log(value) vs t

struct WindowPolicy {
  // Default window: samples whose value lies in [lo_rel, hi_rel] * initial value.
  double lo_rel = 1e-10;
  double hi_rel = 1e-2;
  static WindowPolicy all() { return {0.0, 1e300}; }
};

/// Least-squares exponential-rate fit over the windowed samples. Throws
/// InvalidInput when fewer than 10 positive samples fall inside the window;
/// a flat series comes back with the degenerate flag set.
struct DecayFit {
  double rate = 0.0;
  double r_squared = 0.0;
  bool degenerate = false;
};
DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                        WindowPolicy window = {});

struct SyncDiagnostics {
  std::vector<double> times;
  std::vector<double> err_l2, err_hsigma, err_hminushalf, err_streamgrad;
  std::vector<double> theta_l2, eta_l2;
  DecayFit fit_l2, fit_hsigma, fit_hminushalf, fit_streamgrad;
  TheoryBounds bounds;
  ConditionReport conditions;
  double final_relative_error = 0.0;  // err_l2 final over err_l2 initial
  bool synchronized = false;          // final relative error < 1e-6 by t_end
  bool diverged = false;
  std::string error;

  /// CSV: t,err_l2,err_hsigma,err_hminushalf,err_streamgrad,theta_l2,eta_l2
  void write_series_csv(std::ostream& os) const;
};

/// Runs the twin experiment against an already prepared reference state.
SyncDiagnostics run_twin(const TwinExperimentConfig& cfg, const SpinUpResult& ref);
/// Convenience overload that performs the spin-up itself.
SyncDiagnostics run_twin(const TwinExperimentConfig& cfg);

struct SweepCell {
  double mu = 0.0;
  int resolution = 0;
  double h = 0.0, rho = 0.0, r1 = 0.0, r2 = 0.0;
  double fitted_rate = 0.0, r_squared = 0.0;
  bool synchronized = false;
  bool failed = false;
  std::string error;
};

struct SweepTable {
  std::vector<SweepCell> cells;
  /// CSV: mu,resolution,h,rho,r1,r2,fitted_rate,r_squared,synchronized
  void write_csv(std::ostream& os) const;
  /// Smallest synchronizing N for the given mu, if any cell synchronized.
  std::optional<int> minimal_synchronizing_resolution(double mu) const;
};

/// Twin run per (mu, N) cell over a shared spin-up; cells execute on a bounded
/// worker pool and per-cell failures are recorded in-table.
SweepTable parameter_sweep(const TwinExperimentConfig& base, const SpinUpResult& ref,
                           const std::vector<double>& mu_grid,
                           const std::vector<int>& resolution_grid, int threads = 0);
/// Overload performing the spin-up itself.
SweepTable parameter_sweep(const TwinExperimentConfig& base, const std::vector<double>& mu_grid,
                           const std::vector<int>& resolution_grid, int threads = 0);

}  // namespace sqg

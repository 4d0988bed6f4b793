#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sqg/forcing.hpp"
#include "sqg/observation.hpp"
#include "sqg/spectral_field.hpp"

namespace sqg {

struct PhysicalParams {
  double kappa = 0.0;   // diffusivity > 0
  double gamma = 0.0;   // dissipation exponent in (0, 2]
  double mu = 0.0;      // nudging coefficient >= 0
  ForcingSpec forcing;

  void validate() const;
  /// The analysis assumes the subcritical range gamma in (1, 2].
  bool subcritical_warning() const { return gamma <= 1.0; }
};

struct StepperConfig {
  double dt = 0.0;
  bool linear_only = false;  // drops advection; forcing and nudging stay active
};

struct SimState {
  double time = 0.0;
  SpectralField theta;
};

/// Advective term dealias(u . grad theta) with u = Riesz_perp(theta),
/// computed pseudo-spectrally; output is mean-zero.
SpectralField nonlinear_term(const SpectralField& theta);

/// Time integration of the SQG equation and its nudged companion.
///
/// Two-stage integrating-factor Heun: the stiff dissipation kappa |k|^gamma is
/// applied exactly through e^{-kappa |k|^gamma dt}; advection, forcing, and the
/// nudging feedback -mu J_h(eta - theta) are explicit inside the stages.
/// States are dealiased and mean-zeroed after every step.
class SqgStepper {
 public:
  SqgStepper(const GridSpec& grid, const PhysicalParams& params, const StepperConfig& cfg);

  const GridSpec& grid() const { return grid_; }
  const PhysicalParams& params() const { return params_; }
  const StepperConfig& config() const { return cfg_; }
  double dt() const { return cfg_.dt; }
  const SpectralField& forcing_field() const { return fhat_; }

  /// One step of the reference equation.
  void step(SimState& state) const;

  /// One co-integrated step of reference theta and nudged eta; the feedback
  /// sees J_h(eta - theta) evaluated at matching stage times.
  void step_twin(SimState& state, SpectralField& eta, const ObservationOperator& obs) const;

  /// Largest advective CFL number dt*max|u|*max|k| seen so far.
  double max_cfl_seen() const { return max_cfl_; }

 private:
  SpectralField tendency(const SpectralField& phi, const SpectralField* nudge_target,
                         const ObservationOperator* obs, double time) const;
  void check_cfl(double umax, double time) const;
  void finalize(SpectralField& phi, double time) const;

  GridSpec grid_;
  PhysicalParams params_;
  StepperConfig cfg_;
  SpectralField fhat_;
  std::vector<double> exp_factor_;  // e^{-kappa |k|^gamma dt} per mode
  double kmax_ = 0.0;
  mutable double max_cfl_ = 0.0;
};

struct RunObserver {
  double cadence = 0.0;  // time units between calls; <= 0 means every step
  std::function<void(const SimState&)> fn;
};

struct RunResult {
  SimState final_state;
  std::vector<double> times;
  std::vector<double> theta_l2;
  bool diverged = false;
  std::string error;
  double failure_time = 0.0;
};

/// Steps `initial` to t_end, sampling ||theta||_L2 at `record_cadence` and
/// firing observers. A divergence mid-run returns the partial record with the
/// failure marker set instead of throwing.
RunResult run(const SqgStepper& stepper, SimState initial, double t_end,
              std::vector<RunObserver> observers = {}, double record_cadence = 0.1);

}  // namespace sqg

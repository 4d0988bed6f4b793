#include "sqg/dynamics.hpp"

#include <cmath>

#include "sqg/errors.hpp"
#include "sqg/fft.hpp"
#include "sqg/spectral_ops.hpp"

namespace sqg {
namespace {

// u . grad(theta) on the collocation grid; also reports max point speed.
SpectralField advection(const SpectralField& theta, double* umax_out) {
  const GridSpec& g = theta.grid();
  auto [u1f, u2f] = riesz_perp_velocity(theta);
  std::vector<double> u1 = to_physical(u1f);
  std::vector<double> u2 = to_physical(u2f);
  std::vector<double> tx = to_physical(derivative(theta, 0));
  std::vector<double> ty = to_physical(derivative(theta, 1));
  double umax = 0.0;
  std::vector<double> prod(g.size());
  for (int i = 0; i < g.size(); ++i) {
    prod[i] = u1[i] * tx[i] + u2[i] * ty[i];
    umax = std::max(umax, std::hypot(u1[i], u2[i]));
  }
  if (umax_out) *umax_out = umax;
  return project_mean_zero(dealias(from_physical(g, prod)));
}

bool finite_coeffs(const SpectralField& f) {
  for (const auto& c : f.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace

void PhysicalParams::validate() const {
  if (kappa <= 0.0) throw InvalidInput("params.kappa must be positive");
  if (gamma <= 0.0 || gamma > 2.0)
    throw InvalidInput("params.gamma outside the admissible range (0, 2]");
  if (mu < 0.0) throw InvalidInput("params.mu must be nonnegative");
}

SpectralField nonlinear_term(const SpectralField& theta) {
  return advection(theta, nullptr);
}

SqgStepper::SqgStepper(const GridSpec& grid, const PhysicalParams& params,
                       const StepperConfig& cfg)
    : grid_(grid), params_(params), cfg_(cfg), fhat_(grid) {
  params_.validate();
  if (cfg_.dt <= 0.0) throw InvalidInput("StepperConfig.dt must be positive");
  if (cfg_.dt * params_.mu > 0.5)
    throw InvalidInput("explicit nudging stability guard violated: need dt*mu <= 0.5");
  fhat_ = params_.forcing.synthesize(grid);
  exp_factor_.resize(grid.size());
  for (int iy = 0; iy < grid.ny; ++iy) {
    double k2 = grid.ky(iy);
    for (int ix = 0; ix < grid.nx; ++ix) {
      double kk = std::hypot(double(grid.kx(ix)), k2);
      exp_factor_[iy * grid.nx + ix] =
          std::exp(-params_.kappa * std::pow(kk, params_.gamma) * cfg_.dt);
    }
  }
  kmax_ = std::hypot(double(grid.dealias_cut_x()), double(grid.dealias_cut_y()));
}

void SqgStepper::check_cfl(double umax, double time) const {
  double cfl = cfg_.dt * umax * kmax_;
  max_cfl_ = std::max(max_cfl_, cfl);
  if (cfl > 0.5) {
    throw DivergenceError(
        "step rejected: advective CFL dt*max|u|*max|k| = " + std::to_string(cfl) +
            " exceeds 0.5 at t = " + std::to_string(time),
        time);
  }
}

SpectralField SqgStepper::tendency(const SpectralField& phi, const SpectralField* nudge_target,
                                   const ObservationOperator* obs, double time) const {
  SpectralField g = fhat_;
  if (!cfg_.linear_only) {
    double umax = 0.0;
    SpectralField adv = advection(phi, &umax);
    check_cfl(umax, time);
    g -= adv;
  }
  if (params_.mu > 0.0 && obs != nullptr && nudge_target != nullptr) {
    SpectralField err = phi;
    err -= *nudge_target;
    SpectralField jerr = obs->apply(err);
    jerr *= params_.mu;
    g -= jerr;
  }
  return g;
}

void SqgStepper::finalize(SpectralField& phi, double time) const {
  phi = project_mean_zero(dealias(phi));
  if (!finite_coeffs(phi))
    throw DivergenceError("NaN/Inf in coefficients; last good time t = " + std::to_string(time),
                          time);
}

void SqgStepper::step(SimState& state) const {
  const double dt = cfg_.dt;
  SpectralField g1 = tendency(state.theta, nullptr, nullptr, state.time);
  SpectralField stage = state.theta;
  for (int i = 0; i < grid_.size(); ++i)
    stage.raw(i) = exp_factor_[i] * (state.theta.raw(i) + dt * g1.raw(i));
  stage.set(0, 0, 0.0);  // stage predictions stay in the mean-zero class
  SpectralField g2 = tendency(stage, nullptr, nullptr, state.time);
  for (int i = 0; i < grid_.size(); ++i)
    state.theta.raw(i) = exp_factor_[i] * state.theta.raw(i) +
                         0.5 * dt * (exp_factor_[i] * g1.raw(i) + g2.raw(i));
  finalize(state.theta, state.time);
  state.time += dt;
}

void SqgStepper::step_twin(SimState& state, SpectralField& eta,
                           const ObservationOperator& obs) const {
  const double dt = cfg_.dt;
  SpectralField gt1 = tendency(state.theta, nullptr, nullptr, state.time);
  SpectralField ge1 = tendency(eta, &state.theta, &obs, state.time);
  SpectralField tstage = state.theta;
  SpectralField estage = eta;
  for (int i = 0; i < grid_.size(); ++i) {
    tstage.raw(i) = exp_factor_[i] * (state.theta.raw(i) + dt * gt1.raw(i));
    estage.raw(i) = exp_factor_[i] * (eta.raw(i) + dt * ge1.raw(i));
  }
  tstage.set(0, 0, 0.0);  // stage predictions stay in the mean-zero class
  estage.set(0, 0, 0.0);  // (the plain volume average injects a mean otherwise)
  SpectralField gt2 = tendency(tstage, nullptr, nullptr, state.time);
  SpectralField ge2 = tendency(estage, &tstage, &obs, state.time);
  for (int i = 0; i < grid_.size(); ++i) {
    state.theta.raw(i) = exp_factor_[i] * state.theta.raw(i) +
                         0.5 * dt * (exp_factor_[i] * gt1.raw(i) + gt2.raw(i));
    eta.raw(i) = exp_factor_[i] * eta.raw(i) +
                 0.5 * dt * (exp_factor_[i] * ge1.raw(i) + ge2.raw(i));
  }
  finalize(state.theta, state.time);
  finalize(eta, state.time);
  state.time += dt;
}

RunResult run(const SqgStepper& stepper, SimState initial, double t_end,
              std::vector<RunObserver> observers, double record_cadence) {
  RunResult out;
  SimState s = std::move(initial);
  if (t_end <= s.time) throw InvalidInput("run: t_end must exceed the initial time");
  const double dt = stepper.dt();
  long steps = std::lround(std::ceil((t_end - s.time) / dt - 1e-9));
  long record_every = std::max(1L, std::lround(record_cadence / dt));
  std::vector<long> obs_every(observers.size());
  for (size_t i = 0; i < observers.size(); ++i)
    obs_every[i] = observers[i].cadence <= 0.0
                       ? 1
                       : std::max(1L, std::lround(observers[i].cadence / dt));
  out.times.push_back(s.time);
  out.theta_l2.push_back(l2_norm(s.theta));
  for (const auto& o : observers) o.fn(s);
  for (long n = 0; n < steps; ++n) {
    try {
      stepper.step(s);
    } catch (const DivergenceError& e) {
      out.diverged = true;
      out.error = e.what();
      out.failure_time = e.last_good_time;
      break;
    }
    if ((n + 1) % record_every == 0 || n + 1 == steps) {
      out.times.push_back(s.time);
      out.theta_l2.push_back(l2_norm(s.theta));
    }
    for (size_t i = 0; i < observers.size(); ++i)
      if ((n + 1) % obs_every[i] == 0 || n + 1 == steps) observers[i].fn(s);
  }
  out.final_state = std::move(s);
  return out;
}

}  // namespace sqg

#include <doctest.h>

#include <cmath>

#include "sqg/dynamics.hpp"
#include "sqg/errors.hpp"
#include "sqg/rng.hpp"
#include "sqg/spectral_ops.hpp"

using namespace sqg;
namespace {

SpectralField cosine(const GridSpec& g, int k1, int k2, double amp = 1.0) {
  SpectralField f(g);
  f.add_cosine(k1, k2, amp);
  f.set_mean_zero_flag(true);
  return f;
}

double conjugate_symmetry_defect(const SpectralField& f) {
  const GridSpec& g = f.grid();
  double worst = 0.0;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      int k1 = g.kx(ix), k2 = g.ky(iy);
      worst = std::max(worst, std::abs(f.at(k1, k2) - std::conj(f.at(-k1, -k2))));
    }
  return worst;
}

}  // namespace

TEST_CASE("nonlinear_term vanishes on plane waves") {
  GridSpec g(32, 32);
  CHECK(l2_norm(nonlinear_term(cosine(g, 2, 0))) <= 1e-12);
  CHECK(l2_norm(nonlinear_term(cosine(g, 3, 1))) <= 1e-12);
  SpectralField zero(g);
  zero.set_mean_zero_flag(true);
  CHECK(l2_norm(nonlinear_term(zero)) == 0.0);
}

TEST_CASE("nonlinear_term closed form: cos x + cos 2y advects to sin x sin 2y") {
  GridSpec g(32, 32);
  SpectralField theta = cosine(g, 1, 0) + cosine(g, 0, 2);
  SpectralField expect(g);  // sin x sin 2y = [cos(x-2y) - cos(x+2y)] / 2
  expect.add_cosine(1, -2, 0.5);
  expect.add_cosine(1, 2, -0.5);
  CHECK(l2_norm(nonlinear_term(theta) - expect) <= 1e-10);
}

TEST_CASE("exact linear decay factor, any dt") {
  GridSpec g(32, 32);
  PhysicalParams params{0.1, 1.5, 0.0, {}};
  for (double dt : {0.1, 0.05, 0.02}) {
    SqgStepper stepper(g, params, {dt, true});
    SimState s{0.0, cosine(g, 2, 0)};
    while (s.time < 1.0 - 1e-12) stepper.step(s);
    double expect = std::exp(-0.1 * std::pow(2.0, 1.5));
    CHECK(std::abs(2.0 * s.theta.at(2, 0).real() - expect) <= 1e-10);
    CHECK(std::abs(s.theta.at(2, 0).imag()) <= 1e-14);
  }
}

TEST_CASE("single-mode nonlinear trajectory equals the linear one") {
  GridSpec g(32, 32);
  PhysicalParams params{0.1, 1.5, 0.0, {}};
  SqgStepper lin(g, params, {0.02, true});
  SqgStepper full(g, params, {0.02, false});
  SimState a{0.0, cosine(g, 2, 0)};
  SimState b{0.0, cosine(g, 2, 0)};
  for (int i = 0; i < 50; ++i) {
    lin.step(a);
    full.step(b);
  }
  CHECK(l2_norm(a.theta - b.theta) <= 1e-10);
}

TEST_CASE("linear-nudged decay rate: kappa |k|^gamma + mu, O(dt^2) self-convergence") {
  GridSpec g(32, 32);
  auto amplitude_after = [&](double dt) {
    PhysicalParams params{0.1, 1.5, 3.0, {}};
    SqgStepper stepper(g, params, {dt, true});
    ObservationOperator obs = ObservationOperator::rough_modal(2);
    SimState ref{0.0, SpectralField(g)};
    ref.theta.set_mean_zero_flag(true);
    SpectralField eta = cosine(g, 2, 0);
    long n = std::lround(1.0 / dt);
    for (long i = 0; i < n; ++i) stepper.step_twin(ref, eta, obs);
    return 2.0 * eta.at(2, 0).real();
  };
  double exact = std::exp(-(0.1 * std::pow(2.0, 1.5) + 3.0));
  double e1 = std::abs(amplitude_after(0.01) - exact);
  double e2 = std::abs(amplitude_after(0.005) - exact);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.3));
  CHECK(e1 <= 1e-4);
}

TEST_CASE("mean stays zero and reality is preserved over a forced run") {
  GridSpec g(32, 32);
  PhysicalParams params{0.2, 1.5, 0.0, ForcingSpec::single_shell(2, 1, 0.1)};
  SqgStepper stepper(g, params, {0.01, false});
  SimState s{0.0, random_band_limited(g, 1, 6, 2.0, 4, 1.0)};
  for (int i = 0; i < 1000; ++i) stepper.step(s);
  CHECK(std::abs(s.theta.at(0, 0)) <= 1e-12);
  CHECK(conjugate_symmetry_defect(s.theta) <= 1e-12);
  CHECK(s.theta.mean_zero());
}

TEST_CASE("unforced runs dissipate L2 monotonically") {
  GridSpec g(48, 48);
  PhysicalParams params{0.1, 1.5, 0.0, {}};
  SqgStepper stepper(g, params, {0.01, false});
  SimState s{0.0, random_band_limited(g, 1, 8, 1.5, 21, 1.0)};
  double prev = l2_norm(s.theta);
  for (int block = 0; block < 20; ++block) {
    for (int i = 0; i < 10; ++i) stepper.step(s);
    double now = l2_norm(s.theta);
    CHECK(now <= prev * (1 + 1e-12));
    prev = now;
  }
}

TEST_CASE("forced reference stays inside the monitored a priori ball") {
  GridSpec g(48, 48);
  ForcingSpec forcing = ForcingSpec::single_shell(2, 1, 0.05);
  PhysicalParams params{0.1, 1.5, 0.0, forcing};
  SqgStepper stepper(g, params, {0.01, false});
  SimState s{0.0, random_band_limited(g, 1, 6, 2.0, 8, 1.0)};
  double theta0_l2 = l2_norm(s.theta);
  double f_bound = hs_norm(forcing.synthesize(g), -params.gamma / 2) / params.kappa;
  double ball = std::max(theta0_l2, f_bound) * 1.05;
  for (int block = 0; block < 100; ++block) {
    for (int i = 0; i < 10; ++i) stepper.step(s);
    CHECK(l2_norm(s.theta) <= ball);
  }
}

TEST_CASE("stability guards") {
  GridSpec g(64, 64);
  PhysicalParams params{0.1, 1.5, 3.0, {}};
  CHECK_THROWS_AS(SqgStepper(g, params, {0.2, true}), InvalidInput);  // dt*mu > 0.5
  PhysicalParams bad_gamma{0.1, 3.0, 0.0, {}};
  CHECK_THROWS_AS(SqgStepper(g, bad_gamma, {0.01, false}), InvalidInput);
  SUBCASE("advective CFL violation rejects the step") {
    PhysicalParams ok{0.1, 1.5, 0.0, {}};
    SqgStepper stepper(g, ok, {0.1, false});
    SimState s{0.0, cosine(g, 1, 0, 50.0)};
    CHECK_THROWS_AS(stepper.step(s), DivergenceError);
  }
}

TEST_CASE("run: zero data, zero forcing stays zero and records series") {
  GridSpec g(32, 32);
  PhysicalParams params{0.1, 1.5, 0.0, {}};
  SqgStepper stepper(g, params, {0.01, false});
  SimState s{0.0, SpectralField(g)};
  s.theta.set_mean_zero_flag(true);
  RunResult res = run(stepper, std::move(s), 0.5, {}, 0.1);
  CHECK(!res.diverged);
  CHECK(l2_norm(res.final_state.theta) == 0.0);
  CHECK(res.times.size() >= 5);
  for (double v : res.theta_l2) CHECK(v == 0.0);
}

TEST_CASE("run: second-order temporal self-convergence on a smooth forced run") {
  GridSpec g(48, 48);
  PhysicalParams params{0.1, 1.5, 0.0, ForcingSpec::single_shell(2, 1, 0.05)};
  auto final_state = [&](double dt) {
    SqgStepper stepper(g, params, {dt, false});
    SimState s{0.0, random_band_limited(g, 1, 6, 2.0, 8, 1.0)};
    long n = std::lround(1.0 / dt);
    for (long i = 0; i < n; ++i) stepper.step(s);
    return s.theta;
  };
  SpectralField a = final_state(0.02);
  SpectralField b = final_state(0.01);
  SpectralField c = final_state(0.005);
  double e1 = l2_norm(a - b);
  double e2 = l2_norm(b - c);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.125));  // ratio within 4 +- 0.5
}

TEST_CASE("run preserves partial results after divergence") {
  GridSpec g(64, 64);
  PhysicalParams params{0.1, 1.5, 0.0, {}};
  SqgStepper stepper(g, params, {0.1, false});
  SimState s{0.0, cosine(g, 1, 0, 50.0)};  // violates the CFL guard immediately
  RunResult res = run(stepper, std::move(s), 1.0, {}, 0.1);
  CHECK(res.diverged);
  CHECK(res.times.size() == 1);
  CHECK(!res.error.empty());
}

#pragma once

#include <cstdint>

#include "sqg/spectral_field.hpp"

namespace sqg {

/// Deterministic generator (splitmix64 core) with an explicit Box-Muller normal,
/// so identical seeds give identical fields on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in (0, 1].
  double next_unit();
  double next_normal();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Real mean-zero field with independent Gaussian coefficients on the annulus
/// kmin <= |k| <= kmax, amplitude |k|^{-spectral_slope}, conjugate-symmetrized.
/// kmax must sit inside the dealias band. target_l2 > 0 rescales the result to
/// that L2 norm.
SpectralField random_band_limited(const GridSpec& grid, double kmin, double kmax,
                                  double spectral_slope, std::uint64_t seed,
                                  double target_l2 = 0.0);

}  // namespace sqg

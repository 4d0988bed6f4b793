#include "sqg/forcing.hpp"

#include <cmath>
#include <numbers>

#include "sqg/errors.hpp"

namespace sqg {

bool ForcingSpec::empty() const {
  for (const auto& m : modes)
    if (m.amplitude != 0.0) return false;
  return true;
}

ForcingSpec ForcingSpec::single_shell(int kf1, int kf2, double amplitude) {
  ForcingSpec f;
  f.modes.push_back({kf1, kf2, amplitude, 0.0});
  // sin(kp.x) = cos(kp.x - pi/2), kp = kf rotated by 90 degrees
  f.modes.push_back({-kf2, kf1, amplitude, -std::numbers::pi / 2});
  return f;
}

SpectralField ForcingSpec::synthesize(const GridSpec& grid) const {
  SpectralField out(grid);
  for (const auto& m : modes) {
    if (m.k1 == 0 && m.k2 == 0)
      throw InvalidInput("ForcingSpec: k = 0 mode is not allowed (forcing must be mean-zero)");
    if (!grid.in_dealias_band(m.k1, m.k2))
      throw InvalidInput("ForcingSpec: forcing mode outside the dealias band");
    out.add_cosine(m.k1, m.k2, m.amplitude, m.phase);
  }
  out.set_mean_zero_flag(true);
  return out;
}

}  // namespace sqg

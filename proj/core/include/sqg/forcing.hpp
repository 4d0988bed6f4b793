#pragma once

#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

/// One real forcing mode: amplitude * cos(k.x + phase).
struct ForcingMode {
  int k1 = 0;
  int k2 = 0;
  double amplitude = 0.0;
  double phase = 0.0;
};

/// Time-independent, real, mean-zero forcing given as a list of cosine modes.
struct ForcingSpec {
  std::vector<ForcingMode> modes;

  bool empty() const;

  /// Default single-shell forcing A [cos(kf.x) + sin(kf_perp.x)].
  static ForcingSpec single_shell(int kf1, int kf2, double amplitude);

  /// Synthesizes the spectral field; validates no k=0 mode and all modes
  /// inside the dealias band of the grid.
  SpectralField synthesize(const GridSpec& grid) const;
};

}  // namespace sqg

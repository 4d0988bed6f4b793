#pragma once

#include <vector>

#include "sqg/snapshot.hpp"
#include "sqg/spectral_field.hpp"

namespace sqg {

/// z-levels and trapezoid weights for integrating the half-space extension.
/// Levels start at 0, increase strictly, and cluster exponentially near the
/// boundary (uniform in e^{-z}), matching the decay of every mode.
struct StreamExtensionSpec {
  std::vector<double> z_levels;

  double z_max() const { return z_levels.empty() ? 0.0 : z_levels.back(); }
  void validate() const;

  /// Z_max = 18.5 keeps the |k| = 1 truncation error e^{-Z_max} below 1e-8.
  static StreamExtensionSpec standard(double z_max = 18.5, int levels = 8001);
};

/// Slice Psi(., z) of the harmonic extension with Neumann trace theta:
/// Psihat(k, z) = -thetahat(k) e^{-|k| z} / |k|. At z = 0 this is -Lambda^{-1} theta.
SpectralField harmonic_extension(const SpectralField& theta, double z);

/// ||grad3 (Psi - Psi_eta)||^2_{L2(Omega x R+)} via the boundary pairing
/// integral of zeta * Lambda^{-1} zeta  (exact spectral route).
double gradient_error_exact(const SpectralField& zeta);

/// Same quantity assembled directly: trapezoid quadrature in z of the slice
/// energies ||grad3 Psi_zeta(., z)||^2_{L2(Omega)}. Independent oracle for
/// gradient_error_exact; raises ResolutionError when the internally estimated
/// quadrature error exceeds 1e-6 relative.
double gradient_error_quadrature(const SpectralField& zeta, const StreamExtensionSpec& spec);

/// SQGF export of one extension slice Psi(., z); the snapshot's time field
/// stores z (kappa and gamma are zeroed, they do not apply to a slice).
Snapshot stream_slice_snapshot(const SpectralField& theta, double z);

}  // namespace sqg

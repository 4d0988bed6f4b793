#include "sqg/streamfunction.hpp"

#include <cmath>
#include <map>

#include "sqg/errors.hpp"
#include "sqg/spectral_ops.hpp"

namespace sqg {
namespace {

void require_mean_zero(const SpectralField& f, const char* op) {
  if (!has_zero_mean(f)) throw InvalidInput(std::string(op) + ": field must be mean-zero");
}

double trapezoid(const std::vector<double>& z, const std::vector<double>& f, size_t stride) {
  double sum = 0.0;
  size_t i = stride;
  for (; i < z.size(); i += stride)
    sum += 0.5 * (f[i] + f[i - stride]) * (z[i] - z[i - stride]);
  size_t last = i - stride;  // cover a trailing remainder shorter than the stride
  if (last + 1 < z.size())
    sum += 0.5 * (f.back() + f[last]) * (z.back() - z[last]);
  return sum;
}

}  // namespace

void StreamExtensionSpec::validate() const {
  if (z_levels.size() < 2 || z_levels.front() != 0.0)
    throw InvalidInput("StreamExtensionSpec: z_levels must start at 0 and hold >= 2 entries");
  for (size_t i = 1; i < z_levels.size(); ++i)
    if (z_levels[i] <= z_levels[i - 1])
      throw InvalidInput("StreamExtensionSpec: z_levels must be strictly increasing");
}

StreamExtensionSpec StreamExtensionSpec::standard(double z_max, int levels) {
  if (z_max <= 0.0 || levels < 3)
    throw InvalidInput("StreamExtensionSpec: need z_max > 0 and levels >= 3");
  StreamExtensionSpec spec;
  spec.z_levels.resize(levels);
  double u_span = 1.0 - std::exp(-z_max);
  for (int i = 0; i < levels; ++i) {
    double t = double(i) / (levels - 1);
    spec.z_levels[i] = i + 1 == levels ? z_max : -std::log1p(-t * u_span);
  }
  spec.z_levels[0] = 0.0;
  return spec;
}

SpectralField harmonic_extension(const SpectralField& theta, double z) {
  require_mean_zero(theta, "harmonic_extension");
  if (z < 0.0) throw InvalidInput("harmonic_extension: z must be nonnegative");
  const GridSpec& g = theta.grid();
  SpectralField out(g);
  for (int iy = 0; iy < g.ny; ++iy) {
    double k2 = g.ky(iy);
    for (int ix = 0; ix < g.nx; ++ix) {
      double k1 = g.kx(ix);
      if (k1 == 0.0 && k2 == 0.0) continue;
      double kk = std::hypot(k1, k2);
      int idx = iy * g.nx + ix;
      out.raw(idx) = -theta.raw(idx) * std::exp(-kk * z) / kk;
    }
  }
  out.set_mean_zero_flag(true);
  return out;
}

double gradient_error_exact(const SpectralField& zeta) {
  return lambda_inv_pairing(zeta);
}

double gradient_error_quadrature(const SpectralField& zeta, const StreamExtensionSpec& spec) {
  require_mean_zero(zeta, "gradient_error_quadrature");
  spec.validate();
  const GridSpec& g = zeta.grid();

  // Slice energy: ||grad3 Psi(., z)||^2 = (2pi)^2 sum_k 2 |k|^2 |Psihat(k,z)|^2
  //             = (2pi)^2 sum_k 2 |zetahat(k)|^2 e^{-2|k| z}.
  // Group modes by |k|^2 (integer) so each distinct decay rate costs one exp.
  std::map<long, double> shells;
  for (int iy = 0; iy < g.ny; ++iy) {
    long k2 = g.ky(iy);
    for (int ix = 0; ix < g.nx; ++ix) {
      long k1 = g.kx(ix);
      long m = k1 * k1 + k2 * k2;
      if (m == 0) continue;
      double a = std::norm(zeta.raw(iy * g.nx + ix));
      if (a > 0.0) shells[m] += a;
    }
  }
  const auto& z = spec.z_levels;
  std::vector<double> energy(z.size(), 0.0);
  for (const auto& [m, amp2] : shells) {
    double two_k = 2.0 * std::sqrt(double(m));
    double w = 2.0 * kTwoPi * kTwoPi * amp2;
    for (size_t i = 0; i < z.size(); ++i) energy[i] += w * std::exp(-two_k * z[i]);
  }
  double full = trapezoid(z, energy, 1);
  double half = trapezoid(z, energy, 2);
  if (full > 0.0) {
    double estimate = std::abs(full - half) / 3.0;  // Richardson, O(h^2) rule
    if (estimate > 1e-6 * full)
      throw ResolutionError(
          "gradient_error_quadrature: estimated quadrature error " +
          std::to_string(estimate / full) + " relative exceeds 1e-6; refine z_levels");
  }
  return full;
}

Snapshot stream_slice_snapshot(const SpectralField& theta, double z) {
  SpectralField slice = harmonic_extension(theta, z);
  return Snapshot{theta.grid(), z, 0.0, 0.0, to_physical(slice)};
}

}  // namespace sqg

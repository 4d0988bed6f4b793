#include "sqg/rng.hpp"

#include <cmath>

#include "sqg/errors.hpp"

namespace sqg {

std::uint64_t Rng::next_u64() {
  // splitmix64 (Steele, Lea, Flood 2014)
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::next_unit() {
  return ((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double Rng::next_normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_unit();
  double u2 = next_unit();
  double r = std::sqrt(-2.0 * std::log(u1));
  have_spare_ = true;
  spare_ = r * std::sin(kTwoPi * u2);
  return r * std::cos(kTwoPi * u2);
}

SpectralField random_band_limited(const GridSpec& grid, double kmin, double kmax,
                                  double spectral_slope, std::uint64_t seed,
                                  double target_l2) {
  if (kmin < 1.0 || kmax < kmin)
    throw InvalidInput("random_band_limited: need 1 <= kmin <= kmax");
  if (kmax > std::min(grid.dealias_cut_x(), grid.dealias_cut_y()))
    throw InvalidInput("random_band_limited: kmax exceeds the dealias band");
  Rng rng(seed);
  SpectralField out(grid);
  // Fill the half-lattice k2 > 0, plus k2 = 0 with k1 > 0; mirror conjugates.
  int kx_hi = grid.dealias_cut_x();
  int ky_hi = grid.dealias_cut_y();
  for (int k2 = 0; k2 <= ky_hi; ++k2) {
    for (int k1 = (k2 == 0 ? 1 : -kx_hi); k1 <= kx_hi; ++k1) {
      double kk = std::hypot(double(k1), double(k2));
      if (kk < kmin || kk > kmax) continue;
      double amp = std::pow(kk, -spectral_slope);
      std::complex<double> c(rng.next_normal(), rng.next_normal());
      c *= amp * 0.5;
      out.set(k1, k2, out.at(k1, k2) + c);
      out.set(-k1, -k2, out.at(-k1, -k2) + std::conj(c));
    }
  }
  out.set_mean_zero_flag(true);
  if (target_l2 > 0.0) {
    double sum = 0.0;
    for (const auto& c : out.coeffs()) sum += std::norm(c);
    double nrm = kTwoPi * std::sqrt(sum);
    if (nrm > 0.0) out *= target_l2 / nrm;
  }
  return out;
}

}  // namespace sqg

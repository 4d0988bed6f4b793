#pragma once

#include <complex>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

/// Real scalar field on the torus stored as Fourier coefficients.
///
/// Convention: phi(x) = sum_k phihat(k) e^{ik.x} over the integer lattice, so a
/// real field carries the conjugate symmetry phihat(-k) = conj(phihat(k)).
/// Storage is FFT order, layout [iky*nx + ikx].
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid)
      : grid_(grid), coeffs_(grid.size(), {0.0, 0.0}) {}

  const GridSpec& grid() const { return grid_; }
  bool mean_zero() const { return mean_zero_; }
  void set_mean_zero_flag(bool v) { mean_zero_ = v; }

  std::complex<double>& raw(int idx) { return coeffs_[idx]; }
  const std::complex<double>& raw(int idx) const { return coeffs_[idx]; }
  std::vector<std::complex<double>>& coeffs() { return coeffs_; }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }

  /// Coefficient at signed wavenumber (k1, k2).
  std::complex<double> at(int k1, int k2) const {
    return coeffs_[grid_.index_of_ky(k2) * grid_.nx + grid_.index_of_kx(k1)];
  }
  void set(int k1, int k2, std::complex<double> v) {
    coeffs_[grid_.index_of_ky(k2) * grid_.nx + grid_.index_of_kx(k1)] = v;
  }
  /// Adds a real cosine mode a*cos(k.x + phase) (conjugate-symmetric pair).
  void add_cosine(int k1, int k2, double amplitude, double phase = 0.0);

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  GridSpec grid_;
  std::vector<std::complex<double>> coeffs_;
  bool mean_zero_ = false;
};

/// Forward transform of physical samples on the collocation grid (x fastest).
SpectralField from_physical(const GridSpec& grid, const std::vector<double>& values);

/// Synthesizes physical samples; imaginary residue of the inverse DFT is dropped.
std::vector<double> to_physical(const SpectralField& field);

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* where);

/// True when the k=0 coefficient is negligible relative to the field size.
bool has_zero_mean(const SpectralField& field, double rel_tol = 1e-10);

}  // namespace sqg

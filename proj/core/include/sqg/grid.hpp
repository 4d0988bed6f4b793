#pragma once

#include <cmath>
#include <numbers>

#include "sqg/errors.hpp"

namespace sqg {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform collocation grid on the periodic square [-pi, pi]^2.
///
/// Wavenumbers are the integer lattice {-nx/2+1, ..., nx/2} x {-ny/2+1, ..., ny/2};
/// the 2/3-rule dealias mask retains |k1| <= nx/3 and |k2| <= ny/3 (integer division).
struct GridSpec {
  int nx = 0;
  int ny = 0;

  GridSpec() = default;
  GridSpec(int nx_, int ny_) : nx(nx_), ny(ny_) {
    if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
      throw InvalidInput("GridSpec: nx, ny must be even and >= 8");
  }
  static GridSpec square(int n) { return GridSpec(n, n); }

  bool operator==(const GridSpec&) const = default;

  int size() const { return nx * ny; }
  double dx() const { return kTwoPi / nx; }
  double dy() const { return kTwoPi / ny; }
  double cell_area() const { return dx() * dy(); }

  /// Physical coordinates of collocation point (ix, iy), ix in [0, nx).
  double x(int ix) const { return -std::numbers::pi + ix * dx(); }
  double y(int iy) const { return -std::numbers::pi + iy * dy(); }

  /// Signed wavenumber of storage index i (FFT ordering), in {-n/2+1, ..., n/2}.
  int kx(int ix) const { return ix <= nx / 2 ? ix : ix - nx; }
  int ky(int iy) const { return iy <= ny / 2 ? iy : iy - ny; }

  /// Storage index of signed wavenumber k (wraps negatives).
  int index_of_kx(int k) const { return (k % nx + nx) % nx; }
  int index_of_ky(int k) const { return (k % ny + ny) % ny; }

  int dealias_cut_x() const { return nx / 3; }
  int dealias_cut_y() const { return ny / 3; }
  bool in_dealias_band(int k1, int k2) const {
    return std::abs(k1) <= dealias_cut_x() && std::abs(k2) <= dealias_cut_y();
  }
};

}  // namespace sqg

#include "sqg/spectral_field.hpp"

#include <cmath>

#include "sqg/errors.hpp"
#include "sqg/fft.hpp"

namespace sqg {

void SpectralField::add_cosine(int k1, int k2, double amplitude, double phase) {
  if (k1 == 0 && k2 == 0) {
    set(0, 0, at(0, 0) + amplitude * std::cos(phase));
    return;
  }
  std::complex<double> half = 0.5 * amplitude * std::exp(std::complex<double>(0.0, phase));
  set(k1, k2, at(k1, k2) + half);
  set(-k1, -k2, at(-k1, -k2) + std::conj(half));
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_grid(*this, o, "operator+=");
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  mean_zero_ = mean_zero_ && o.mean_zero_;
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_grid(*this, o, "operator-=");
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  mean_zero_ = mean_zero_ && o.mean_zero_;
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

// The DFT phase is anchored at grid index 0 while the collocation point there
// sits at x = -pi, so coefficients pick up (-1)^{k1+k2} relative to the
// e^{ik.x} convention. Parity of k equals parity of the storage index.

SpectralField from_physical(const GridSpec& grid, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != grid.size())
    throw ConfigError("from_physical: sample array does not match grid dimensions");
  SpectralField out(grid);
  for (int i = 0; i < grid.size(); ++i) out.raw(i) = values[i];
  fft::forward(grid, out.coeffs().data());
  double norm = 1.0 / grid.size();
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      out.raw(iy * grid.nx + ix) *= ((ix + iy) & 1) ? -norm : norm;
  return out;
}

std::vector<double> to_physical(const SpectralField& field) {
  const GridSpec& grid = field.grid();
  std::vector<std::complex<double>> work = field.coeffs();
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      if ((ix + iy) & 1) work[iy * grid.nx + ix] = -work[iy * grid.nx + ix];
  fft::backward(grid, work.data());
  std::vector<double> out(grid.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = work[i].real();
  return out;
}

void require_same_grid(const SpectralField& a, const SpectralField& b, const char* where) {
  if (!(a.grid() == b.grid()))
    throw ConfigError(std::string(where) + ": grid mismatch");
}

bool has_zero_mean(const SpectralField& field, double rel_tol) {
  double scale = 0.0;
  for (const auto& c : field.coeffs()) scale = std::max(scale, std::abs(c));
  return std::abs(field.at(0, 0)) <= rel_tol * std::max(scale, 1e-300);
}

}  // namespace sqg

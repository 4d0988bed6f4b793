#include "sqg/spectral_ops.hpp"

#include <cmath>

#include "sqg/errors.hpp"

namespace sqg {
namespace {

void require_mean_zero(const SpectralField& phi, const char* op) {
  if (!has_zero_mean(phi))
    throw InvalidInput(std::string(op) + ": field must be mean-zero");
}

}  // namespace

SpectralField fractional_power(const SpectralField& phi, double beta) {
  if (beta < 0.0) require_mean_zero(phi, "fractional_power(beta < 0)");
  const GridSpec& g = phi.grid();
  SpectralField out(g);
  for (int iy = 0; iy < g.ny; ++iy) {
    double k2 = g.ky(iy);
    for (int ix = 0; ix < g.nx; ++ix) {
      double k1 = g.kx(ix);
      double kk = std::hypot(k1, k2);
      int idx = iy * g.nx + ix;
      out.raw(idx) = kk == 0.0 ? 0.0 : std::pow(kk, beta) * phi.raw(idx);
    }
  }
  out.set_mean_zero_flag(true);
  return out;
}

std::pair<SpectralField, SpectralField> riesz_perp_velocity(const SpectralField& theta) {
  require_mean_zero(theta, "riesz_perp_velocity");
  const GridSpec& g = theta.grid();
  SpectralField u1(g), u2(g);
  for (int iy = 0; iy < g.ny; ++iy) {
    int k2 = g.ky(iy);
    for (int ix = 0; ix < g.nx; ++ix) {
      int k1 = g.kx(ix);
      int idx = iy * g.nx + ix;
      if ((k1 == 0 && k2 == 0) || ix == g.nx / 2 || iy == g.ny / 2) continue;
      double kk = std::hypot(double(k1), double(k2));
      std::complex<double> iphi = std::complex<double>(0.0, 1.0) * theta.raw(idx);
      u1.raw(idx) = -double(k2) / kk * iphi;
      u2.raw(idx) = double(k1) / kk * iphi;
    }
  }
  u1.set_mean_zero_flag(true);
  u2.set_mean_zero_flag(true);
  return {std::move(u1), std::move(u2)};
}

SpectralField derivative(const SpectralField& phi, int axis) {
  if (axis != 0 && axis != 1) throw InvalidInput("derivative: axis must be 0 or 1");
  const GridSpec& g = phi.grid();
  SpectralField out(g);
  for (int iy = 0; iy < g.ny; ++iy) {
    int k2 = g.ky(iy);
    for (int ix = 0; ix < g.nx; ++ix) {
      int k1 = g.kx(ix);
      int idx = iy * g.nx + ix;
      if (ix == g.nx / 2 || iy == g.ny / 2) continue;  // keep derivatives real
      double k = axis == 0 ? k1 : k2;
      out.raw(idx) = std::complex<double>(0.0, k) * phi.raw(idx);
    }
  }
  out.set_mean_zero_flag(true);
  return out;
}

double l2_norm(const SpectralField& phi) {
  double sum = 0.0;
  for (const auto& c : phi.coeffs()) sum += std::norm(c);
  return kTwoPi * std::sqrt(sum);
}

double lp_norm(const SpectralField& phi, double p) {
  if (p < 1.0) throw InvalidInput("lp_norm: p must satisfy 1 <= p < infinity");
  std::vector<double> vals = to_physical(phi);
  double sum = 0.0;
  for (double v : vals) sum += std::pow(std::abs(v), p);
  return std::pow(sum * phi.grid().cell_area(), 1.0 / p);
}

double linf_norm(const SpectralField& phi) {
  std::vector<double> vals = to_physical(phi);
  double m = 0.0;
  for (double v : vals) m = std::max(m, std::abs(v));
  return m;
}

double hs_norm(const SpectralField& phi, double s) {
  if (s < 0.0) require_mean_zero(phi, "hs_norm(s < 0)");
  const GridSpec& g = phi.grid();
  double sum = 0.0;
  for (int iy = 0; iy < g.ny; ++iy) {
    double k2 = g.ky(iy);
    for (int ix = 0; ix < g.nx; ++ix) {
      double k1 = g.kx(ix);
      if (k1 == 0.0 && k2 == 0.0) continue;
      double kk2 = k1 * k1 + k2 * k2;
      sum += std::pow(kk2, s) * std::norm(phi.raw(iy * g.nx + ix));
    }
  }
  return kTwoPi * std::sqrt(sum);
}

double lambda_inv_pairing(const SpectralField& zeta) {
  require_mean_zero(zeta, "lambda_inv_pairing");
  const GridSpec& g = zeta.grid();
  double sum = 0.0;
  for (int iy = 0; iy < g.ny; ++iy) {
    double k2 = g.ky(iy);
    for (int ix = 0; ix < g.nx; ++ix) {
      double k1 = g.kx(ix);
      if (k1 == 0.0 && k2 == 0.0) continue;
      sum += std::norm(zeta.raw(iy * g.nx + ix)) / std::hypot(k1, k2);
    }
  }
  return kTwoPi * kTwoPi * sum;
}

double l2_inner(const SpectralField& phi, const SpectralField& g) {
  require_same_grid(phi, g, "l2_inner");
  double sum = 0.0;
  for (size_t i = 0; i < phi.coeffs().size(); ++i)
    sum += (phi.coeffs()[i] * std::conj(g.coeffs()[i])).real();
  return kTwoPi * kTwoPi * sum;
}

SpectralField dealias(const SpectralField& phi) {
  const GridSpec& g = phi.grid();
  SpectralField out = phi;
  for (int iy = 0; iy < g.ny; ++iy) {
    int k2 = g.ky(iy);
    for (int ix = 0; ix < g.nx; ++ix) {
      if (!g.in_dealias_band(g.kx(ix), k2)) out.raw(iy * g.nx + ix) = 0.0;
    }
  }
  return out;
}

SpectralField project_mean_zero(const SpectralField& phi) {
  SpectralField out = phi;
  out.set(0, 0, 0.0);
  out.set_mean_zero_flag(true);
  return out;
}

double max_spectral_divergence(const SpectralField& u1, const SpectralField& u2) {
  require_same_grid(u1, u2, "max_spectral_divergence");
  const GridSpec& g = u1.grid();
  double m = 0.0;
  for (int iy = 0; iy < g.ny; ++iy) {
    double k2 = g.ky(iy);
    for (int ix = 0; ix < g.nx; ++ix) {
      double k1 = g.kx(ix);
      int idx = iy * g.nx + ix;
      m = std::max(m, std::abs(k1 * u1.raw(idx) + k2 * u2.raw(idx)));
    }
  }
  return m;
}

}  // namespace sqg

#include "sqg/observation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sqg/errors.hpp"
#include "sqg/fft.hpp"
#include "sqg/spectral_ops.hpp"

namespace sqg {
namespace {

constexpr double kPi = std::numbers::pi;

// Overlap fraction of the interval [a, b) with the grid cell centered at
// x_m = -pi + m*dx, accounting for periodic wrapping.
double cell_overlap(double a, double b, double xm, double dx) {
  double lo = xm - 0.5 * dx, hi = xm + 0.5 * dx;
  double total = 0.0;
  for (int s = -1; s <= 1; ++s) {
    double shift = s * kTwoPi;
    total += std::max(0.0, std::min(b, hi + shift) - std::max(a, lo + shift));
  }
  return total / dx;
}

// Sampled bump of radius eps, indexed by signed grid displacement (index d maps
// to displacement kx(d)*dx, the circular-convolution ordering), renormalized so
// the grid sum times the cell area equals 1.
std::vector<double> sampled_mollifier(const GridSpec& g, double eps) {
  std::vector<double> k(g.size(), 0.0);
  double sum = 0.0;
  for (int iy = 0; iy < g.ny; ++iy) {
    double yv = g.ky(iy) * g.dy();
    for (int ix = 0; ix < g.nx; ++ix) {
      double r = std::hypot(g.kx(ix) * g.dx(), yv) / eps;
      if (r < 1.0) {
        double v = std::exp(-1.0 / (1.0 - r * r));
        k[iy * g.nx + ix] = v;
        sum += v;
      }
    }
  }
  double scale = 1.0 / (sum * g.cell_area());
  for (double& v : k) v *= scale;
  return k;
}

}  // namespace

std::vector<double> PartitionOfUnity::materialize(int alpha) const {
  std::vector<double> out(grid_.size(), 0.0);
  const Patch& p = patches_[alpha];
  for (int py = 0; py < p.npy(); ++py)
    for (int px = 0; px < p.npx(); ++px)
      out[p.yidx[py] * grid_.nx + p.xidx[px]] += p.values[py * p.npx() + px];
  return out;
}

std::vector<double> PartitionOfUnity::accumulate_all() const {
  std::vector<double> out(grid_.size(), 0.0);
  for (int a = 0; a < count(); ++a) {
    const Patch& p = patches_[a];
    for (int py = 0; py < p.npy(); ++py)
      for (int px = 0; px < p.npx(); ++px)
        out[p.yidx[py] * grid_.nx + p.xidx[px]] += p.values[py * p.npx() + px];
  }
  return out;
}

PartitionOfUnity build_partition(int n, const GridSpec& grid) {
  int root = static_cast<int>(std::lround(std::sqrt(double(n))));
  if (n < 9 || root * root != n)
    throw InvalidInput("build_partition: N must be a perfect square >= 9");
  double h = kPi / root;
  double eps = h / 10.0;
  if (eps < 3.0 * std::max(grid.dx(), grid.dy()))
    throw ResolutionError("build_partition: grid too coarse, need h/10 >= 3 grid spacings");

  PartitionOfUnity pou;
  pou.grid_ = grid;
  pou.n_ = n;
  pou.side_ = 2 * root;
  pou.h_ = h;
  pou.eps_ = eps;

  // Spectrum of the mollifier (unnormalized DFT), computed once.
  std::vector<double> kernel = sampled_mollifier(grid, eps);
  std::vector<std::complex<double>> kernel_hat(kernel.begin(), kernel.end());
  fft::forward(grid, kernel_hat.data());

  // 1D overlap profiles of the 2*root intervals [i*h, (i+1)*h) per axis.
  auto profiles = [&](int npts, double d, auto coord) {
    std::vector<std::vector<double>> prof(pou.side_);
    for (int i = -root; i < root; ++i) {
      auto& v = prof[i + root];
      v.resize(npts);
      for (int m = 0; m < npts; ++m) v[m] = cell_overlap(i * h, (i + 1) * h, coord(m), d);
    }
    return prof;
  };
  auto prof_x = profiles(grid.nx, grid.dx(), [&](int m) { return grid.x(m); });
  auto prof_y = profiles(grid.ny, grid.dy(), [&](int m) { return grid.y(m); });

  const double conv_scale = grid.cell_area() / grid.size();
  std::vector<std::complex<double>> work(grid.size());

  auto patch_indices = [&](double lo, double hi, int npts, double d) {
    // grid indices whose cells can intersect [lo - eps, hi + eps]
    int m_lo = static_cast<int>(std::floor((lo - eps + kPi) / d - 0.5)) - 1;
    int m_hi = static_cast<int>(std::ceil((hi + eps + kPi) / d + 0.5)) + 1;
    std::vector<int> idx;
    for (int m = m_lo; m <= m_hi; ++m) idx.push_back((m % npts + npts) % npts);
    return idx;
  };

  pou.patches_.resize(4 * n);
  pou.a_tilde_.resize(4 * n);
  for (int j = -root; j < root; ++j) {
    for (int i = -root; i < root; ++i) {
      int alpha = (i + root) + (j + root) * pou.side_;
      const auto& vx = prof_x[i + root];
      const auto& vy = prof_y[j + root];
      for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix)
          work[iy * grid.nx + ix] = vx[ix] * vy[iy];
      fft::forward(grid, work.data());
      for (int idx = 0; idx < grid.size(); ++idx) work[idx] *= kernel_hat[idx] * conv_scale;
      fft::backward(grid, work.data());

      PartitionOfUnity::Patch p;
      p.xidx = patch_indices(i * h, (i + 1) * h, grid.nx, grid.dx());
      p.yidx = patch_indices(j * h, (j + 1) * h, grid.ny, grid.dy());
      p.values.resize(p.xidx.size() * p.yidx.size());
      double integral = 0.0;
      for (int py = 0; py < p.npy(); ++py) {
        for (int px = 0; px < p.npx(); ++px) {
          double v = work[p.yidx[py] * grid.nx + p.xidx[px]].real();
          if (std::abs(v) < 1e-14) v = 0.0;  // strip FFT round-off, keep psi >= 0
          p.values[py * p.npx() + px] = v;
          integral += v;
        }
      }
      pou.a_tilde_[alpha] = integral * grid.cell_area();
      pou.patches_[alpha] = std::move(p);
    }
  }
  return pou;
}

std::string obs_kind_name(ObsKind kind) {
  switch (kind) {
    case ObsKind::VolumeAverage: return "volume_average";
    case ObsKind::ShiftedVolumeAverage: return "shifted_volume_average";
    case ObsKind::RoughModal: return "rough_modal";
    case ObsKind::SmoothModal: return "smooth_modal";
  }
  return "?";
}

ObsKind obs_kind_from_name(const std::string& name) {
  if (name == "volume_average") return ObsKind::VolumeAverage;
  if (name == "shifted_volume_average") return ObsKind::ShiftedVolumeAverage;
  if (name == "rough_modal") return ObsKind::RoughModal;
  if (name == "smooth_modal") return ObsKind::SmoothModal;
  throw ConfigError("unknown observation kind: " + name);
}

double smooth_modal_profile(double xi) {
  if (xi <= 0.25) return 1.0;
  if (xi >= 0.5) return 0.0;
  double t = 4.0 * xi - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

ObservationOperator ObservationOperator::volume_average(
    std::shared_ptr<const PartitionOfUnity> pou) {
  ObservationOperator op;
  op.kind_ = ObsKind::VolumeAverage;
  op.n_ = pou->n();
  op.h_ = pou->h();
  op.pou_ = std::move(pou);
  return op;
}

ObservationOperator ObservationOperator::shifted_volume_average(
    std::shared_ptr<const PartitionOfUnity> pou) {
  ObservationOperator op = volume_average(std::move(pou));
  op.kind_ = ObsKind::ShiftedVolumeAverage;
  return op;
}

ObservationOperator ObservationOperator::rough_modal(int n) {
  if (n < 1) throw InvalidInput("rough_modal: N must be positive");
  ObservationOperator op;
  op.kind_ = ObsKind::RoughModal;
  op.n_ = n;
  op.h_ = kTwoPi / n;
  return op;
}

ObservationOperator ObservationOperator::smooth_modal(int n) {
  if (n < 1) throw InvalidInput("smooth_modal: N must be positive");
  ObservationOperator op;
  op.kind_ = ObsKind::SmoothModal;
  op.n_ = n;
  op.h_ = std::pow(2.0, -n);
  return op;
}

SpectralField ObservationOperator::apply(const SpectralField& phi) const {
  const GridSpec& g = phi.grid();
  switch (kind_) {
    case ObsKind::RoughModal: {
      SpectralField out(g);
      for (int iy = 0; iy < g.ny; ++iy) {
        int k2 = g.ky(iy);
        if (std::abs(k2) > n_) continue;
        for (int ix = 0; ix < g.nx; ++ix) {
          if (std::abs(g.kx(ix)) > n_) continue;
          out.raw(iy * g.nx + ix) = phi.raw(iy * g.nx + ix);
        }
      }
      out.set_mean_zero_flag(phi.mean_zero());
      return out;
    }
    case ObsKind::SmoothModal: {
      SpectralField out(g);
      double scale = std::pow(2.0, -(n_ + 1));
      for (int iy = 0; iy < g.ny; ++iy) {
        double k2 = g.ky(iy);
        for (int ix = 0; ix < g.nx; ++ix) {
          double k1 = g.kx(ix);
          int idx = iy * g.nx + ix;
          out.raw(idx) = smooth_modal_profile(std::hypot(k1, k2) * scale) * phi.raw(idx);
        }
      }
      out.set_mean_zero_flag(phi.mean_zero());
      return out;
    }
    case ObsKind::VolumeAverage:
    case ObsKind::ShiftedVolumeAverage: {
      if (!(pou_->grid() == g))
        throw ConfigError("ObservationOperator::apply: field grid does not match the partition grid");
      std::vector<double> phys = to_physical(phi);
      std::vector<double> acc(g.size(), 0.0);
      double area = g.cell_area();
      for (int a = 0; a < pou_->count(); ++a) {
        const auto& p = pou_->patch(a);
        double s = 0.0;
        for (int py = 0; py < p.npy(); ++py) {
          const double* row = &p.values[py * p.npx()];
          const double* grow = &phys[p.yidx[py] * g.nx];
          for (int px = 0; px < p.npx(); ++px) s += row[px] * grow[p.xidx[px]];
        }
        double avg = s * area / pou_->a_tilde(a);
        for (int py = 0; py < p.npy(); ++py) {
          const double* row = &p.values[py * p.npx()];
          double* arow = &acc[p.yidx[py] * g.nx];
          for (int px = 0; px < p.npx(); ++px) arow[p.xidx[px]] += avg * row[px];
        }
      }
      SpectralField out = from_physical(g, acc);
      if (kind_ == ObsKind::ShiftedVolumeAverage) out = project_mean_zero(out);
      return out;
    }
  }
  throw InvalidInput("ObservationOperator::apply: unknown kind");
}

ObservationOperator make_observation_operator(ObsKind kind, int n, const GridSpec& grid) {
  switch (kind) {
    case ObsKind::RoughModal: return ObservationOperator::rough_modal(n);
    case ObsKind::SmoothModal: return ObservationOperator::smooth_modal(n);
    case ObsKind::VolumeAverage:
      return ObservationOperator::volume_average(
          std::make_shared<PartitionOfUnity>(build_partition(n, grid)));
    case ObsKind::ShiftedVolumeAverage:
      return ObservationOperator::shifted_volume_average(
          std::make_shared<PartitionOfUnity>(build_partition(n, grid)));
  }
  throw InvalidInput("make_observation_operator: unknown kind");
}

}  // namespace sqg

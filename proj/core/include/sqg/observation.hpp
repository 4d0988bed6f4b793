#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sqg/spectral_field.hpp"

namespace sqg {

/// Mollified partition of unity over the 4N-square decomposition of the torus.
///
/// The domain splits into 4N semi-open squares Q_alpha of side h = pi/sqrt(N),
/// alpha = (i, j) with i, j in {-sqrt(N), ..., sqrt(N)-1}. Each psi_alpha is the
/// periodic convolution of the (box-filtered) indicator of Q_alpha with the
/// compactly supported exponential bump of radius epsilon = h/10, normalized so
/// its discrete integral is 1. Members are stored on their support patches.
class PartitionOfUnity {
 public:
  struct Patch {
    std::vector<int> xidx, yidx;     // wrapped grid indices covered by the patch
    std::vector<double> values;      // [py*npx + px], x fastest
    int npx() const { return static_cast<int>(xidx.size()); }
    int npy() const { return static_cast<int>(yidx.size()); }
  };

  const GridSpec& grid() const { return grid_; }
  int n() const { return n_; }                       // the perfect square N
  int squares_per_side() const { return side_; }     // 2 sqrt(N)
  int count() const { return static_cast<int>(patches_.size()); }  // 4N
  double h() const { return h_; }
  double epsilon() const { return eps_; }

  const Patch& patch(int alpha) const { return patches_[alpha]; }
  double a_tilde(int alpha) const { return a_tilde_[alpha]; }

  /// Full-grid physical samples of psi_alpha (zero off the support patch).
  std::vector<double> materialize(int alpha) const;

  /// Pointwise sum over all members, for partition-identity checks.
  std::vector<double> accumulate_all() const;

  friend PartitionOfUnity build_partition(int n, const GridSpec& grid);

 private:
  GridSpec grid_;
  int n_ = 0;
  int side_ = 0;
  double h_ = 0.0;
  double eps_ = 0.0;
  std::vector<Patch> patches_;
  std::vector<double> a_tilde_;
};

/// Builds the partition. N must be a perfect square >= 9 and the grid must
/// resolve the mollifier: epsilon = h/10 >= 3 dx.
PartitionOfUnity build_partition(int n, const GridSpec& grid);

enum class ObsKind { VolumeAverage, ShiftedVolumeAverage, RoughModal, SmoothModal };

std::string obs_kind_name(ObsKind kind);
ObsKind obs_kind_from_name(const std::string& name);

/// Smooth radial low-pass profile: 1 on |xi| <= 1/4, 0 on |xi| >= 1/2, with an
/// exponential-bump transition exp(1 - 1/(1-t^2)), t = (|xi| - 1/4)/(1/4).
double smooth_modal_profile(double xi);

/// Interpolant observable J_h at resolution h.
///
/// VolumeAverage:        sum_alpha phi_tilde(Q_alpha) psi_alpha,  h = pi/sqrt(N)
/// ShiftedVolumeAverage: same minus its global mean (output mean-zero)
/// RoughModal:           square truncation |k1| <= N and |k2| <= N, h = 2pi/N
/// SmoothModal:          multiplier psi0(|k| 2^{-N-1}),             h = 2^{-N}
class ObservationOperator {
 public:
  static ObservationOperator volume_average(std::shared_ptr<const PartitionOfUnity> pou);
  static ObservationOperator shifted_volume_average(std::shared_ptr<const PartitionOfUnity> pou);
  static ObservationOperator rough_modal(int n);
  static ObservationOperator smooth_modal(int n);

  ObsKind kind() const { return kind_; }
  int n() const { return n_; }
  double h() const { return h_; }
  bool is_modal() const {
    return kind_ == ObsKind::RoughModal || kind_ == ObsKind::SmoothModal;
  }
  const std::shared_ptr<const PartitionOfUnity>& partition() const { return pou_; }

  SpectralField apply(const SpectralField& phi) const;

 private:
  ObsKind kind_;
  int n_ = 0;
  double h_ = 0.0;
  std::shared_ptr<const PartitionOfUnity> pou_;
};

/// Convenience factory; builds the partition for the volume kinds.
ObservationOperator make_observation_operator(ObsKind kind, int n, const GridSpec& grid);

}  // namespace sqg

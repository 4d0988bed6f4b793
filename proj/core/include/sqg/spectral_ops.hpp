#pragma once

#include <utility>

#include "sqg/spectral_field.hpp"

namespace sqg {

/// Lambda^beta = (-Delta)^{beta/2}: multiplies coefficients by |k|^beta.
/// The k=0 coefficient is zeroed for every beta; beta < 0 requires a mean-zero field.
SpectralField fractional_power(const SpectralField& phi, double beta);

/// Velocity u = Riesz_perp(theta) = (-R2, R1) theta, i.e.
/// u1hat = -i k2/|k| thetahat, u2hat = i k1/|k| thetahat. Requires mean-zero theta.
/// Self-paired Nyquist bins are zeroed to preserve reality.
std::pair<SpectralField, SpectralField> riesz_perp_velocity(const SpectralField& theta);

/// Partial derivative: multiplies by i*k1 (axis 0) or i*k2 (axis 1).
SpectralField derivative(const SpectralField& phi, int axis);

/// ||phi||_{L^2} computed spectrally: (2pi)^2 sum |phihat|^2 under the hood,
/// consistent with the collocation rectangle rule.
double l2_norm(const SpectralField& phi);

/// ||phi||_{L^p} by the uniform-grid rectangle rule, 1 <= p < infinity.
double lp_norm(const SpectralField& phi, double p);

/// Max over collocation points (the "L^infinity (grid max)" monitor).
double linf_norm(const SpectralField& phi);

/// Homogeneous Sobolev norm: sqrt((2pi)^2 sum_{k!=0} |k|^{2s} |phihat(k)|^2).
/// Negative s requires a mean-zero field.
double hs_norm(const SpectralField& phi, double s);

/// (2pi)^2 sum_{k!=0} |zetahat(k)|^2 / |k|  =  integral of zeta * Lambda^{-1} zeta.
/// Requires mean-zero zeta. Equals hs_norm(zeta, -1/2)^2.
double lambda_inv_pairing(const SpectralField& zeta);

/// L^2 inner product: (2pi)^2 Re sum phihat conj(ghat).
double l2_inner(const SpectralField& phi, const SpectralField& g);

/// Zeroes modes with |k1| > nx/3 or |k2| > ny/3. Idempotent.
SpectralField dealias(const SpectralField& phi);

/// Subtracts the global average: zeroes the k=0 coefficient exactly.
SpectralField project_mean_zero(const SpectralField& phi);

/// Max over k of |k . uhat(k)|, for divergence checks of a velocity pair.
double max_spectral_divergence(const SpectralField& u1, const SpectralField& u2);

}  // namespace sqg

#pragma once

#include "magnoise/core.hpp"
#include "magnoise/gamma.hpp"

namespace magnoise {

enum class Convention { two_sided, one_sided };
const char* to_string(Convention c);

struct SpectralDensity {
  Mat3 S = Mat3::Zero();  // T^2/Hz
  Convention convention = Convention::two_sided;
  double omega = 0;

  double component(const Vec3& u) const { return u.dot(S * u); }
};

// S_B = (I + n n) Gamma(omega) hbar omega coth(hbar omega / 2 k_B T)
SpectralDensity lab_spectral_density(const DissipationKernel& kernel, double omega,
                                     double temperature);

// Longitudinal block from S_long (evaluated at the caller's frequency), transverse
// block from 1/2 tr[(I - b b) S(omega0)].
SpectralDensity rotating_frame_density(const SpectralDensity& S_long,
                                       const SpectralDensity& S_omega0, const Vec3& b_hat);

SpectralDensity convention_convert(const SpectralDensity& S, Convention target);

}  // namespace magnoise

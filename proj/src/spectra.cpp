#include "magnoise/spectra.hpp"

namespace magnoise {

const char* to_string(Convention c) {
  return c == Convention::one_sided ? "one-sided" : "two-sided";
}

SpectralDensity lab_spectral_density(const DissipationKernel& kernel, double omega,
                                     double temperature) {
  SpectralDensity out;
  out.omega = omega;
  out.S = kernel.tensor() * thermal_occupation_kernel(omega, temperature);
  return out;
}

SpectralDensity rotating_frame_density(const SpectralDensity& S_long,
                                       const SpectralDensity& S_omega0, const Vec3& b) {
  if (S_long.convention != S_omega0.convention)
    throw DomainError("rotating frame: mixed spectral conventions");
  const Vec3 bh = normalized(b, "polarization axis");
  const Mat3 P = bh * bh.transpose();
  const Mat3 Q = Mat3::Identity() - P;
  SpectralDensity out;
  out.convention = S_long.convention;
  out.omega = S_long.omega;
  out.S = P * (P * S_long.S).trace() + Q * (0.5 * (Q * S_omega0.S).trace());
  return out;
}

SpectralDensity convention_convert(const SpectralDensity& S, Convention target) {
  if (S.convention == target) return S;
  SpectralDensity out = S;
  out.convention = target;
  out.S = target == Convention::one_sided ? Mat3(2.0 * S.S) : Mat3(0.5 * S.S);
  return out;
}

}  // namespace magnoise

#pragma once

#include <array>
#include <vector>

#include "magnoise/core.hpp"

namespace magnoise {

// Geometry: dipole at the origin, slab in d < x.n < d+t, Region I is x.n < d,
// Region III is x.n > d+t. Hankel measure rho drho, so the m = 0 source is
// S e^{-rho z} with S = mu0 (n.m) / (4 pi rho).
//
// Amplitudes are referenced to the interfaces to avoid e^{2kt} overflow:
//   Region I (reflected):  reflected * e^{rho (z - d)}
//   Region II:             alpha * e^{-k (d + t - z)} + beta * e^{-k (z - d)}
//   Region III:            transmitted * e^{-rho (z - d - t)}
//   incident at z = d:     incident = S e^{-rho d}
struct BesselCoefficients {
  double rho = 0;
  int m = 0;
  cplx k{0, 0};
  cplx K{1, 0};
  cplx source{0, 0};  // S_m
  cplx incident{0, 0};
  cplx reflected{0, 0};
  cplx alpha{0, 0}, beta{0, 0};
  cplx transmitted{0, 0};
  // relative residuals of psi and (d psi/dz)/mu continuity at z = d and z = d + t
  std::array<double, 4> residuals{};
  double max_residual() const;
};

// One slab only. m in {-1, 0, 1}; dipole in SI (A m^2).
BesselCoefficients solve_coefficients(const SlabSystem& slab, const Material& material,
                                      double omega, double rho, int m, const Vec3& dipole);

// R(rho) = reflected / incident, the same for every m
cplx reflection_ratio(const SlabSystem& slab, const Material& material, double omega,
                      double rho);

struct DissipatedPower {
  double power = 0;        // W, peak-amplitude convention P = omega^2 m.Gamma.m
  double gamma = 0;        // implied scalar Gamma
  double error_estimate = 0;
};

DissipatedPower dissipated_power(const SlabSystem& slab, const Material& material, double omega,
                                 const Vec3& dipole, double rel_tol = 1e-11);

struct FieldSample {
  Vec3 position = Vec3::Zero();
  CVec3 B = CVec3::Zero();  // T
  CVec3 E = CVec3::Zero();  // V/m
};

struct FieldOptions {
  double rel_tol = 1e-10;
  int max_panels = 2000;
  bool include_source = true;  // false: slab response only
};

FieldSample reconstruct_field(const SlabSystem& slab, const Material& material, double omega,
                              const Vec3& dipole, const Vec3& position,
                              const FieldOptions& opt = {});
std::vector<FieldSample> reconstruct_fields(const SlabSystem& slab, const Material& material,
                                            double omega, const Vec3& dipole,
                                            const std::vector<Vec3>& positions,
                                            const FieldOptions& opt = {});

// Free dipole field mu0/(4 pi |x|^3) (3 x x - I) m
Vec3 dipole_field(const Vec3& dipole, const Vec3& x);

}  // namespace magnoise

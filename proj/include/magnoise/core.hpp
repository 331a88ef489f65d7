#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace magnoise {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;

// CODATA 2018
namespace constants {
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_B = 1.380649e-23;       // J/K
inline constexpr double mu_0 = 1.25663706212e-6;  // H/m
inline constexpr double e_charge = 1.602176634e-19;
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

struct PhysicalConstants {
  double hbar = constants::hbar;
  double k_B = constants::k_B;
  double mu_0 = constants::mu_0;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Conductivity and permeability, possibly frequency dependent.
// sigma = |sigma| exp(-i phi) with phi in [0, pi/2].
class Material {
 public:
  using Response = std::function<cplx(double)>;

  static Material conductor(cplx sigma, cplx mu = constants::mu_0);
  // Ideal London superconductor: sigma(omega) = -i / (mu0 omega lambda_L^2).
  static Material london(double penetration_depth, cplx mu = constants::mu_0);
  // Caller-supplied dispersion; passivity is checked on every evaluation.
  static Material dispersive(Response sigma, Response mu);

  cplx sigma(double omega) const;
  cplx mu(double omega) const;
  cplx K(double omega) const { return mu(omega) / constants::mu_0; }
  double phi(double omega) const;

  bool is_london() const { return london_depth_.has_value(); }
  std::optional<double> london_depth() const { return london_depth_; }
  bool is_dispersive() const { return static_cast<bool>(sigma_fn_); }

 private:
  Material() = default;
  cplx sigma0_{0.0, 0.0};
  cplx mu0_{constants::mu_0, 0.0};
  std::optional<double> london_depth_;
  Response sigma_fn_, mu_fn_;
};

void check_passive(cplx sigma, cplx mu);

enum class SlabConfig { one_slab, two_slab_midpoint };

struct SlabSystem {
  double d = 0;
  double t = 0;
  Vec3 n_hat = Vec3::UnitZ();
  SlabConfig config = SlabConfig::one_slab;

  SlabSystem() = default;
  SlabSystem(double d_, double t_, Vec3 n = Vec3::UnitZ(),
             SlabConfig c = SlabConfig::one_slab);
};

struct RfField {
  double B1 = 0;
  Vec3 b1_hat = Vec3::UnitX();
};

struct SpinContext {
  double gamma = 0;  // rad/(s T)
  double B0 = 0;
  Vec3 b_hat = Vec3::UnitZ();
  double temperature = 0;
  std::optional<RfField> rf;

  SpinContext() = default;
  SpinContext(double gamma_, double B0_, Vec3 b, double T,
              std::optional<RfField> rf_ = std::nullopt);

  double omega0() const { return gamma * B0; }
  double omega1() const { return rf ? gamma * rf->B1 : 0.0; }
  double cos_theta(const Vec3& n_hat) const { return b_hat.dot(n_hat); }
  double cos_beta() const;
};

// |omega mu sigma|^{-1/2}; +inf when omega = 0 or sigma = 0.
double skin_depth(const Material& m, double omega);

// hbar omega coth(hbar omega / 2 k_B T), even in omega.
double thermal_occupation_kernel(double omega, double temperature);

Vec3 normalized(const Vec3& v, const char* what);

}  // namespace magnoise

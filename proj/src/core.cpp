#include "magnoise/core.hpp"

#include <algorithm>
#include <cmath>

namespace magnoise {

namespace {
constexpr double kPhaseSlack = 1e-12;
}

void check_passive(cplx sigma, cplx mu) {
  if (!std::isfinite(sigma.real()) || !std::isfinite(sigma.imag()) ||
      !std::isfinite(mu.real()) || !std::isfinite(mu.imag()))
    throw DomainError("material: non-finite sigma or mu");
  const double scale = std::abs(sigma);
  if (sigma.real() < -kPhaseSlack * scale)
    throw DomainError("material: Re(sigma) < 0 is not passive");
  if (sigma.imag() > kPhaseSlack * scale)
    throw DomainError("material: conductivity phase outside [0, pi/2]");
  if (std::abs(mu) == 0.0) throw DomainError("material: mu = 0");
  if (mu.imag() < -kPhaseSlack * std::abs(mu))
    throw DomainError("material: Im(mu) < 0 is not passive");
  if (mu.real() <= 0.0) throw DomainError("material: Re(mu) must be positive");
}

Material Material::conductor(cplx sigma, cplx mu) {
  check_passive(sigma, mu);
  Material m;
  m.sigma0_ = sigma;
  m.mu0_ = mu;
  return m;
}

Material Material::london(double penetration_depth, cplx mu) {
  if (!(penetration_depth > 0.0) || !std::isfinite(penetration_depth))
    throw DomainError("london: penetration depth must be positive");
  check_passive(cplx(0.0, -1.0), mu);
  Material m;
  m.london_depth_ = penetration_depth;
  m.mu0_ = mu;
  return m;
}

Material Material::dispersive(Response sigma, Response mu) {
  if (!sigma || !mu) throw DomainError("dispersive: empty response function");
  Material m;
  m.sigma_fn_ = std::move(sigma);
  m.mu_fn_ = std::move(mu);
  return m;
}

cplx Material::sigma(double omega) const {
  if (london_depth_) {
    if (omega == 0.0) throw DomainError("london conductivity diverges at omega = 0");
    const double l = *london_depth_;
    return {0.0, -1.0 / (constants::mu_0 * std::abs(omega) * l * l)};
  }
  if (sigma_fn_) {
    cplx s = sigma_fn_(omega);
    check_passive(s, mu_fn_(omega));
    return s;
  }
  return sigma0_;
}

cplx Material::mu(double omega) const { return mu_fn_ ? mu_fn_(omega) : mu0_; }

double Material::phi(double omega) const {
  if (london_depth_) return constants::pi / 2;
  const cplx s = sigma(omega);
  if (s == cplx(0.0, 0.0)) return 0.0;
  double p = -std::arg(s);
  return std::clamp(p, 0.0, constants::pi / 2);
}

Vec3 normalized(const Vec3& v, const char* what) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw DomainError(std::string(what) + ": zero or non-finite direction");
  return v / n;
}

SlabSystem::SlabSystem(double d_, double t_, Vec3 n, SlabConfig c)
    : d(d_), t(t_), n_hat(normalized(n, "slab normal")), config(c) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("slab: d must be positive");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("slab: t must be positive");
}

SpinContext::SpinContext(double gamma_, double B0_, Vec3 b, double T,
                         std::optional<RfField> rf_)
    : gamma(gamma_), B0(B0_), b_hat(normalized(b, "polarization axis")),
      temperature(T), rf(rf_) {
  if (!(gamma > 0.0)) throw DomainError("spin: gamma must be positive");
  if (!(B0 >= 0.0)) throw DomainError("spin: B0 must be non-negative");
  if (!(T >= 0.0)) throw DomainError("spin: temperature must be non-negative");
  if (rf) {
    rf->b1_hat = normalized(rf->b1_hat, "rf axis");
    if (!(rf->B1 >= 0.0)) throw DomainError("spin: B1 must be non-negative");
  }
}

double SpinContext::cos_beta() const {
  if (!rf) throw DomainError("spin: no rf field configured");
  return b_hat.dot(rf->b1_hat);
}

double skin_depth(const Material& m, double omega) {
  if (omega == 0.0) return std::numeric_limits<double>::infinity();
  const double a = std::abs(omega * m.mu(omega) * m.sigma(omega));
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(a);
}

double thermal_occupation_kernel(double omega, double temperature) {
  if (temperature < 0.0) throw DomainError("thermal kernel: T < 0");
  const double w = std::abs(omega);
  if (temperature == 0.0) return constants::hbar * w;
  const double kT2 = 2.0 * constants::k_B * temperature;
  const double x = constants::hbar * w / kT2;
  if (x < 1e-6) return kT2 * (1.0 + x * x / 3.0);
  return constants::hbar * w / std::tanh(x);
}

}  // namespace magnoise

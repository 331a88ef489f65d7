#include "magnoise/fields.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>

#include "magnoise/quadrature.hpp"

namespace magnoise {

using constants::mu_0;
using constants::pi;

double BesselCoefficients::max_residual() const {
  return *std::max_element(residuals.begin(), residuals.end());
}

namespace {

struct Frame {
  Vec3 n, e1, e2;
};

Frame make_frame(const Vec3& n_hat) {
  Frame f;
  f.n = normalized(n_hat, "slab normal");
  const Vec3 trial = std::abs(f.n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  f.e1 = (trial - f.n * f.n.dot(trial)).normalized();
  f.e2 = f.n.cross(f.e1);
  return f;
}

void require_one_slab(const SlabSystem& slab, const char* what) {
  if (slab.config != SlabConfig::one_slab)
    throw DomainError(std::string(what) + ": one-slab configuration only");
  if (!(slab.d > 0) || !(slab.t > 0)) throw DomainError(std::string(what) + ": d, t must be > 0");
}

cplx wavenumber(double rho, cplx omega_mu_sigma) {
  cplx k = std::sqrt(cplx(0.0, 1.0) * omega_mu_sigma + rho * rho);
  if (k.real() < 0.0 || (k.real() == 0.0 && k.imag() < 0.0)) k = -k;
  return k;
}

struct Amplitudes {
  cplx k, kap, Y, D;
  cplx reflected, alpha, beta, transmitted;  // per unit incident amplitude
};

// Interface-referenced solution for unit incident amplitude at z = d.
Amplitudes unit_amplitudes(double rho, double t, cplx omega_mu_sigma, cplx K) {
  Amplitudes a;
  a.k = wavenumber(rho, omega_mu_sigma);
  a.kap = K * rho;
  const cplx ekt = std::exp(-a.k * t);
  a.Y = ekt * ekt;
  const cplx k2 = a.k * a.k, kap2 = a.kap * a.kap;
  a.D = (kap2 + k2) * (1.0 - a.Y) + 2.0 * a.kap * a.k * (1.0 + a.Y);
  const double lead = std::abs(kap2 + k2) * std::abs(1.0 - a.Y) +
                      2.0 * std::abs(a.kap * a.k) * std::abs(1.0 + a.Y);
  if (std::abs(a.D) < 1e-30 * lead) {
    std::ostringstream os;
    os << "slab coefficients: near-resonant denominator at rho = " << rho;
    throw DomainError(os.str());
  }
  a.reflected = (1.0 - a.Y) * (kap2 - k2) / a.D;
  a.alpha = -2.0 * (a.kap - a.k) * a.kap * ekt / a.D;
  a.beta = 2.0 * (a.kap + a.k) * a.kap / a.D;
  a.transmitted = 4.0 * a.k * a.kap * ekt / a.D;
  return a;
}

cplx omega_mu_sigma(const Material& m, double omega) {
  const cplx mu = m.mu(omega);
  const cplx s = omega != 0.0 ? m.sigma(omega) : cplx(0, 0);
  check_passive(s, mu);
  return omega * mu * s;
}

double rel_res(cplx lhs, cplx rhs, double scale) {
  const double s = std::max({std::abs(lhs), std::abs(rhs), scale});
  return s > 0 ? std::abs(lhs - rhs) / s : 0.0;
}

inline double one_minus_exp_over(double x) { return x > 1e-300 ? -std::expm1(-x) / x : 1.0; }
inline double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

BesselCoefficients solve_coefficients(const SlabSystem& slab, const Material& material,
                                      double omega, double rho, int m, const Vec3& dipole) {
  require_one_slab(slab, "solve_coefficients");
  if (!(rho > 0)) throw DomainError("solve_coefficients: rho must be positive");
  if (m < -1 || m > 1) throw DomainError("solve_coefficients: dipole sources have |m| <= 1");
  const Frame f = make_frame(slab.n_hat);
  const double base = mu_0 / (4.0 * pi * rho);
  const double m1 = dipole.dot(f.e1), m2 = dipole.dot(f.e2);
  BesselCoefficients c;
  c.rho = rho;
  c.m = m;
  c.K = material.mu(omega) / mu_0;
  if (m == 0) c.source = base * dipole.dot(f.n);
  if (m == 1) c.source = base * 0.5 * cplx(m1, -m2);
  if (m == -1) c.source = -base * 0.5 * cplx(m1, m2);

  const Amplitudes a = unit_amplitudes(rho, slab.t, omega_mu_sigma(material, omega), c.K);
  c.k = a.k;
  c.incident = c.source * std::exp(-rho * slab.d);
  c.reflected = a.reflected * c.incident;
  c.alpha = a.alpha * c.incident;
  c.beta = a.beta * c.incident;
  c.transmitted = a.transmitted * c.incident;

  const cplx ekt = std::exp(-c.k * slab.t);
  const cplx q = c.k / c.K;
  const double s = std::abs(c.incident);
  c.residuals[0] = rel_res(c.reflected + c.incident, c.alpha * ekt + c.beta, s);
  c.residuals[1] = rel_res(rho * (c.reflected - c.incident), q * (c.alpha * ekt - c.beta),
                           rho * s);
  c.residuals[2] = rel_res(c.alpha + c.beta * ekt, c.transmitted, s);
  c.residuals[3] = rel_res(q * (c.alpha - c.beta * ekt), -rho * c.transmitted, rho * s);
  return c;
}

cplx reflection_ratio(const SlabSystem& slab, const Material& material, double omega,
                      double rho) {
  require_one_slab(slab, "reflection_ratio");
  return unit_amplitudes(rho, slab.t, omega_mu_sigma(material, omega),
                         material.mu(omega) / mu_0)
      .reflected;
}

DissipatedPower dissipated_power(const SlabSystem& slab, const Material& material, double omega,
                                 const Vec3& dipole, double rel_tol) {
  require_one_slab(slab, "dissipated_power");
  if (!(omega > 0)) throw DomainError("dissipated_power: omega must be positive");
  const Frame f = make_frame(slab.n_hat);
  const double mm = dipole.squaredNorm() + std::pow(dipole.dot(f.n), 2);  // m.(I + n n).m
  if (!(mm > 0)) throw DomainError("dissipated_power: zero dipole");

  const cplx mu = material.mu(omega);
  const cplx sig = material.sigma(omega);
  const cplx wms = omega_mu_sigma(material, omega);
  const cplx K = mu / mu_0;
  const double re_sigma = material.is_london() ? 0.0 : std::max(0.0, sig.real());
  const double mag_loss = std::max(0.0, mu.imag()) / std::norm(mu);
  DissipatedPower out;
  if (re_sigma == 0.0 && mag_loss == 0.0) return out;

  const double d = slab.d, t = slab.t;
  // sum over m of |S_m|^2 = (mu0 / 4 pi rho)^2 * mm / 2
  auto integrand = [&](double rho) -> double {
    if (rho <= 0.0) return 0.0;
    const Amplitudes a = unit_amplitudes(rho, t, wms, K);
    const double inc2 = std::exp(-2.0 * rho * d);
    const double x = 2.0 * a.k.real() * t;
    const double tE = t * one_minus_exp_over(x);
    const double ki = a.k.imag();
    const cplx cross = a.alpha * std::conj(a.beta) * std::exp(-a.k * t) *
                       std::exp(cplx(0.0, ki * t)) * t * sinc(ki * t);
    const double zint = (std::norm(a.alpha) + std::norm(a.beta)) * tE + 2.0 * cross.real();
    const double weight = rho * rho * omega * omega * re_sigma + std::pow(rho, 4) * omega * mag_loss;
    const double S2 = std::pow(mu_0 / (4.0 * pi * rho), 2) * 0.5 * mm;
    const double v = 2.0 * pi * rho * weight * S2 * inc2 * zint;
    return std::isfinite(v) ? v : 0.0;
  };

  quad::HalfLineOptions h;
  h.inner.rel_tol = rel_tol;
  h.inner.max_subdivisions = 4000;
  h.scale = 1.0 / d;
  h.tail_exponent = -2.0;
  const double wabs = std::abs(wms);
  std::vector<double> bp{1.0 / t, 0.1 / d, 3.0 / d};
  if (wabs > 0) {
    const double lam = 1.0 / std::sqrt(wabs);
    bp.push_back(1.0 / lam);
    bp.push_back(t / (lam * lam));
    bp.push_back(lam * lam / (d * d * t));
  }
  const double lo = *std::min_element(bp.begin(), bp.end());
  for (double r = std::min(lo, 0.1 / d); r > 1e-12 / d; r *= 0.1) bp.push_back(r);
  h.breakpoints = bp;
  const quad::Result r = quad::integrate_half_line(integrand, h);
  if (!r.converged) throw ConvergenceError("dissipated_power: rho quadrature did not converge");
  out.power = r.value;
  out.error_estimate = r.error / (omega * omega * mm);
  out.gamma = r.value / (omega * omega * mm);
  return out;
}

Vec3 dipole_field(const Vec3& m, const Vec3& x) {
  const double r = x.norm();
  if (!(r > 0)) throw DomainError("dipole field: evaluation at the source");
  const Vec3 u = x / r;
  return mu_0 / (4.0 * pi * r * r * r) * (3.0 * u * u.dot(m) - m);
}

namespace {

enum class Kernel { j0, j1, j1_over };  // J0(rho r), J1(rho r), J1(rho r)/(rho r)

double bessel_kernel(Kernel kind, double x) {
  switch (kind) {
    case Kernel::j0: return x == 0.0 ? 1.0 : boost::math::cyl_bessel_j(0, x);
    case Kernel::j1: return x == 0.0 ? 0.0 : boost::math::cyl_bessel_j(1, x);
    case Kernel::j1_over:
      return std::abs(x) < 1e-6 ? 0.5 - x * x / 16.0 : boost::math::cyl_bessel_j(1, x) / x;
  }
  return 0.0;
}

// int_0^inf rho^a R(rho) e^{-rho s} kernel(rho r) drho
class Hankel {
 public:
  Hankel(const std::function<cplx(double)>& R, double r, double s, const FieldOptions& opt)
      : R_(R), r_(r), s_(s), opt_(opt) {}

  cplx operator()(int a, Kernel kind) const {
    auto f = [&](double rho, bool imag) {
      if (rho == 0.0) return 0.0;
      const cplx v = R_(rho) * std::pow(rho, a) * std::exp(-rho * s_) * bessel_kernel(kind, rho * r_);
      return imag ? v.imag() : v.real();
    };
    return {integrate_part([&](double x) { return f(x, false); }, kind),
            integrate_part([&](double x) { return f(x, true); }, kind)};
  }

 private:
  double integrate_part(const std::function<double(double)>& f, Kernel kind) const {
    quad::Options inner{opt_.rel_tol, 0.0, 400};
    if (r_ <= s_) {
      // fewer than one oscillation per e-fold: the exponential alone controls convergence
      double total = 0;
      double a = 0.0, b = 1.0 / s_;
      for (int i = 0; i < 200; ++i) {
        const quad::Result p = quad::integrate(f, a, b, inner);
        total += p.value;
        if (b * s_ > 40.0 && std::abs(p.value) <= 1e-3 * opt_.rel_tol * std::abs(total)) break;
        if (b * s_ > 80.0) break;
        a = b;
        b *= 2.0;
      }
      return total;
    }
    // panels between consecutive zeros of J0 or J1, partial sums accelerated
    const double order = kind == Kernel::j0 ? 0.0 : 1.0;
    quad::WynnEpsilon wynn;
    double total = 0, a = 0.0;
    int small = 0;
    for (int j = 1; j <= opt_.max_panels; ++j) {
      const double b = boost::math::cyl_bessel_j_zero(order, j) / r_;
      const quad::Result p = quad::integrate(f, a, b, inner);
      total += p.value;
      wynn.push(total);
      a = b;
      if (std::abs(p.value) <= 1e-3 * opt_.rel_tol * std::abs(total)) {
        if (++small >= 2) return total;
      } else {
        small = 0;
      }
      if (j >= 8 && wynn.error() <= opt_.rel_tol * std::abs(wynn.estimate())) return wynn.estimate();
      if (a * s_ > 80.0) return total;  // remaining weight below e^{-80}
    }
    throw ConvergenceError("field reconstruction: Hankel integral did not converge");
  }

  const std::function<cplx(double)>& R_;
  double r_, s_;
  FieldOptions opt_;
};

}  // namespace

FieldSample reconstruct_field(const SlabSystem& slab, const Material& material, double omega,
                              const Vec3& m, const Vec3& x, const FieldOptions& opt) {
  require_one_slab(slab, "reconstruct_fields");
  const Frame f = make_frame(slab.n_hat);
  const double z = x.dot(f.n);
  if (!(z < slab.d)) throw DomainError("reconstruct_fields: position is not in Region I");
  if (opt.include_source && !(x.norm() > 0))
    throw DomainError("reconstruct_fields: position at the dipole");

  const cplx wms = omega_mu_sigma(material, omega);
  const cplx K = material.mu(omega) / mu_0;
  const double t = slab.t;
  const std::function<cplx(double)> R = [&](double rho) {
    return unit_amplitudes(rho, t, wms, K).reflected;
  };

  const Vec3 xp = x - z * f.n;
  const double r = xp.norm();
  const Vec3 rh = r > 0 ? Vec3(xp / r) : f.e1;
  const Vec3 ph = f.n.cross(rh);
  const double s = 2.0 * slab.d - z;
  const Hankel H(R, r, s, opt);

  const double mn = m.dot(f.n);
  const Vec3 mt = m - mn * f.n;
  const double mr = mt.dot(rh), mp = mt.dot(ph);
  const double pre = mu_0 / (4.0 * pi);

  const cplx I10 = H(1, Kernel::j0), I20 = H(2, Kernel::j0), I21 = H(2, Kernel::j1);
  const cplx I11 = H(1, Kernel::j1);
  // (1/r) I_{a,1} evaluated as int rho^{a+1} ... J1(rho r)/(rho r)
  const cplx I01_r = H(1, Kernel::j1_over), I11_r = H(2, Kernel::j1_over);

  // Phi = d psi^I / dz; B_refl = grad Phi
  const cplx dPhi_dz = pre * (mn * I20 + mr * I21);
  const cplx dPhi_dr = pre * (-mn * I21 + mr * (I20 - I11_r));
  const cplx dPhi_dp = pre * mp * I11_r;
  const cplx Phi = pre * (mn * I10 + mr * I11);

  // grad_perp psi^I; d/dr J1(rho r) = rho [J0 - J1/(rho r)]
  const cplx dpsi_dr = pre * (-mn * I11 + mr * (I10 - I01_r));
  const cplx dpsi_dp = pre * mp * I01_r;

  FieldSample out;
  out.position = x;
  CVec3 Brefl = dPhi_dz * f.n.cast<cplx>() + dPhi_dr * rh.cast<cplx>() + dPhi_dp * ph.cast<cplx>();
  CVec3 gpsi = Phi * f.n.cast<cplx>() + dpsi_dr * rh.cast<cplx>() + dpsi_dp * ph.cast<cplx>();
  const cplx I(0.0, 1.0);
  const CVec3 n_c = f.n.cast<cplx>();
  // Eigen's cross conjugates complex operands, so write it out
  const CVec3 gxn(gpsi.y() * n_c.z() - gpsi.z() * n_c.y(), gpsi.z() * n_c.x() - gpsi.x() * n_c.z(),
                  gpsi.x() * n_c.y() - gpsi.y() * n_c.x());
  CVec3 E = -I * omega * gxn;

  // image charge potential: grad phi2(x) = (grad phi1)(2 d n - x)
  {
    const Vec3 y = 2.0 * slab.d * f.n - x;
    const double ry = y.norm(), zy = y.dot(f.n);
    const Vec3 w = f.n.cross(m);
    const double denom = ry * (ry + zy);
    if (denom > 0) {
      const double g = 1.0 / denom;
      const Vec3 grad_g = -g * g * (2.0 * y + f.n * ry + zy * y / ry);
      const Vec3 grad = w * g + y.dot(w) * grad_g;
      E += I * omega * pre * grad.cast<cplx>();
    }
  }

  if (opt.include_source) {
    const double rx = x.norm();
    const Vec3 A = pre * m.cross(x) / (rx * rx * rx);
    E += -I * omega * A.cast<cplx>();
    Brefl += dipole_field(m, x).cast<cplx>();
  }
  out.B = Brefl;
  out.E = E;
  return out;
}

std::vector<FieldSample> reconstruct_fields(const SlabSystem& slab, const Material& material,
                                            double omega, const Vec3& dipole,
                                            const std::vector<Vec3>& positions,
                                            const FieldOptions& opt) {
  std::vector<FieldSample> out;
  out.reserve(positions.size());
  for (const auto& x : positions) out.push_back(reconstruct_field(slab, material, omega, dipole, x, opt));
  return out;
}

}  // namespace magnoise

#include "magnoise/gamma.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace magnoise {

using constants::mu_0;
using constants::pi;

const char* to_string(GammaMethod m) {
  switch (m) {
    case GammaMethod::quadrature: return "quadrature";
    case GammaMethod::static_limit: return "static-limit";
    case GammaMethod::asymptotic: return "asymptotic";
    case GammaMethod::interpolated: return "interpolated";
    case GammaMethod::bath: return "bath";
  }
  return "?";
}

const char* to_string(AsymptoticRegime r) {
  switch (r) {
    case AsymptoticRegime::quasi_static: return "quasi-static";
    case AsymptoticRegime::thin_skin: return "thin-skin";
    case AsymptoticRegime::thin_slab: return "thin-slab";
  }
  return "?";
}

std::optional<AsymptoticRegime> regime_from_string(const std::string& s) {
  if (s == "quasi-static") return AsymptoticRegime::quasi_static;
  if (s == "thin-skin") return AsymptoticRegime::thin_skin;
  if (s == "thin-slab") return AsymptoticRegime::thin_slab;
  return std::nullopt;
}

Mat3 DissipationKernel::tensor() const {
  return (Mat3::Identity() + n_hat * n_hat.transpose()) * gamma;
}

namespace {

inline double one_minus_exp_over(double x) {  // (1 - e^{-x}) / x
  return x > 1e-300 ? -std::expm1(-x) / x : 1.0;
}

inline double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }

}  // namespace

double slab_integrand(double rho, const SlabIntegrandParams& p) {
  if (rho <= 0.0) return 0.0;
  const cplx I(0.0, 1.0);
  cplx k = std::sqrt(I * p.omega_mu_sigma + rho * rho);
  if (k.real() < 0.0 || (k.real() == 0.0 && k.imag() < 0.0)) k = -k;
  assert(k.real() >= 0.0);
  const cplx kap = p.K * rho;
  const double kr = k.real(), ki = k.imag();
  const double x = 2.0 * kr * p.t;
  const double ex = std::exp(-x);
  // Y = e^{-2kt}; every exponential is bounded by one
  const cplx Y = ex * std::exp(cplx(0.0, -2.0 * ki * p.t));
  const cplx k2 = k * k, kap2 = kap * kap;
  cplx D;
  if (p.two_slab) {
    const double q = std::exp(-2.0 * rho * p.d);
    D = (k2 + kap2 + q * (k2 - kap2)) * (1.0 - Y) + 2.0 * kap * k * (1.0 + Y);
  } else {
    D = (kap2 + k2) * (1.0 - Y) + 2.0 * kap * k * (1.0 + Y);
  }
  const cplx a = k - kap, c = k + kap;
  // z-integral of |a e^{-k(2t-w)} + c e^{-kw}|^2 over w in [0, t]
  const double W =
      p.t * ((std::norm(a) * ex + std::norm(c)) * one_minus_exp_over(x) +
             2.0 * (a * std::conj(c) * ex * std::exp(cplx(0.0, -ki * p.t))).real() * sinc(ki * p.t));
  const double r2 = rho * rho;
  const double weight = (p.a + p.b * r2) * r2 * rho * std::norm(p.K) * std::exp(-2.0 * rho * p.d);
  const double val = (p.two_slab ? 2.0 : 1.0) * weight * W / std::norm(D);
  return std::isfinite(val) ? val : 0.0;
}

double integrate_slab(const SlabIntegrandParams& p, const QuadratureConfig& cfg, double* error) {
  if (p.a == 0.0 && p.b == 0.0) {
    if (error) *error = 0.0;
    return 0.0;
  }
  const double d = p.d;
  auto g = [&](double u) { return slab_integrand(u / d, p) / d; };

  const double wms = std::abs(p.omega_mu_sigma);
  const double lambda = wms > 0 ? 1.0 / std::sqrt(wms) : std::numeric_limits<double>::infinity();
  double U = cfg.tail_multiplier * (0.5 * std::log(1.0 / cfg.rel_tol) + 15.0);
  std::vector<double> bp{0.1, 1.0, 3.0, d / p.t, 0.5 * d / p.t};
  if (std::isfinite(lambda)) {
    bp.push_back(d / lambda);
    bp.push_back(d * p.t / (lambda * lambda));
    bp.push_back(lambda * lambda / (d * p.t));
  }
  // refine geometrically below the smallest scale so tiny-u structure is seen
  const double umin = *std::min_element(bp.begin(), bp.end());
  for (double u = std::min(umin, 0.1); u > 1e-12; u *= 0.1) bp.push_back(u);

  quad::Options opt{cfg.rel_tol, cfg.abs_tol, cfg.max_subdivisions};
  quad::Result r = quad::integrate(g, 0.0, U, opt, bp);
  // extend the range while the truncated tail is not negligible
  for (int i = 0; i < 20; ++i) {
    const double tail = 0.5 * std::abs(g(U)) * (1.0 + 2.0 / U);
    if (tail <= 0.01 * cfg.rel_tol * std::abs(r.value)) {
      r.value += 0.5 * g(U);
      break;
    }
    quad::Result more = quad::integrate(g, U, U + 10.0, opt);
    r.value += more.value;
    r.error += more.error;
    r.converged = r.converged && more.converged;
    U += 10.0;
  }
  if (!r.converged) {
    throw ConvergenceError("gamma quadrature: no convergence (worst u-interval [" +
                           std::to_string(r.worst_a) + ", " + std::to_string(r.worst_b) +
                           "], error " + std::to_string(r.error) + ")");
  }
  const double pref = mu_0 * mu_0 / (4.0 * pi);
  if (error) *error = pref * r.error;
  return pref * r.value;
}

SlabIntegrandParams make_params(const SlabSystem& slab, const Material& m, double omega) {
  SlabIntegrandParams p;
  p.d = slab.d;
  p.t = slab.t;
  const cplx mu = m.mu(omega);
  check_passive(omega != 0.0 ? m.sigma(omega) : cplx(0, 0), mu);
  p.K = mu / mu_0;
  if (omega != 0.0) {
    const cplx s = m.sigma(omega);
    p.omega_mu_sigma = omega * mu * s;
    p.a = m.is_london() ? 0.0 : std::max(0.0, s.real());
    p.b = std::max(0.0, mu.imag()) / (omega * std::norm(mu));
  }
  p.two_slab = slab.config == SlabConfig::two_slab_midpoint;
  return p;
}

namespace {

DissipationKernel finish(double value, double err, GammaMethod method, const SlabSystem& slab,
                         const cplx K) {
  DissipationKernel out;
  out.gamma = value;
  out.error_estimate = err;
  out.method = method;
  out.n_hat = slab.n_hat;
  if (K.real() > 0 && std::abs(K.imag()) / K.real() > 0.1)
    out.warnings.push_back("complex permeability: Im(K)/Re(K) > 0.1");
  return out;
}

DissipationKernel run_quadrature(SlabSystem slab, const Material& m, double omega,
                                 const QuadratureConfig& cfg, bool two) {
  if (!(omega > 0.0)) throw DomainError("gamma: omega must be positive");
  slab.config = two ? SlabConfig::two_slab_midpoint : SlabConfig::one_slab;
  SlabIntegrandParams p = make_params(slab, m, omega);
  if (p.a == 0.0 && p.b == 0.0) return finish(0.0, 0.0, GammaMethod::quadrature, slab, p.K);
  double err = 0;
  const double v = integrate_slab(p, cfg, &err);
  return finish(v, err, GammaMethod::quadrature, slab, p.K);
}

}  // namespace

DissipationKernel gamma_integral(const SlabSystem& slab, const Material& m, double omega,
                                 const QuadratureConfig& cfg) {
  if (slab.config != SlabConfig::one_slab)
    throw DomainError("gamma_integral: one-slab configuration required");
  return run_quadrature(slab, m, omega, cfg, false);
}

DissipationKernel gamma_two_slab(const SlabSystem& slab, const Material& m, double omega,
                                 const QuadratureConfig& cfg) {
  if (slab.config != SlabConfig::two_slab_midpoint)
    throw DomainError("gamma_two_slab: two-slab configuration required");
  return run_quadrature(slab, m, omega, cfg, true);
}

DissipationKernel gamma_static(const SlabSystem& slab, const Material& m,
                               const QuadratureConfig& cfg) {
  const cplx mu = m.mu(0.0);
  if (mu.imag() != 0.0)
    throw DomainError("gamma_static: the omega -> 0 limit needs Im(mu) = 0");
  SlabIntegrandParams p;
  p.d = slab.d;
  p.t = slab.t;
  p.K = mu / mu_0;
  p.two_slab = slab.config == SlabConfig::two_slab_midpoint;
  if (m.is_london()) return finish(0.0, 0.0, GammaMethod::static_limit, slab, p.K);
  const cplx s = m.sigma(0.0);
  check_passive(s, mu);
  p.a = s.real();
  double err = 0;
  const double v = integrate_slab(p, cfg, &err);
  return finish(v, err, GammaMethod::static_limit, slab, p.K);
}

DissipationKernel gamma_auto(const SlabSystem& slab, const Material& m, double omega,
                             const QuadratureConfig& cfg) {
  if (omega == 0.0) return gamma_static(slab, m, cfg);
  const double w = std::abs(omega);
  return slab.config == SlabConfig::two_slab_midpoint ? gamma_two_slab(slab, m, w, cfg)
                                                      : gamma_integral(slab, m, w, cfg);
}

RegimeCheck check_regime(AsymptoticRegime r, double d, double t, double lambda, double margin) {
  double ratio = 0;
  switch (r) {
    case AsymptoticRegime::quasi_static:
      ratio = lambda / std::min(d, std::sqrt(d * t));
      break;
    case AsymptoticRegime::thin_skin:
      ratio = std::min(d, t) / lambda;
      break;
    case AsymptoticRegime::thin_slab:
      ratio = std::min(lambda / t, std::sqrt(d * t) / lambda);
      break;
  }
  return {r, ratio >= margin, ratio};
}

std::optional<AsymptoticRegime> detect_regime(double d, double t, double lambda, double margin) {
  for (auto r : {AsymptoticRegime::quasi_static, AsymptoticRegime::thin_skin,
                 AsymptoticRegime::thin_slab})
    if (check_regime(r, d, t, lambda, margin).satisfied) return r;
  return std::nullopt;
}

double asymptotic_shape(AsymptoticRegime r, double d, double t, double lambda, double phi) {
  switch (r) {
    case AsymptoticRegime::quasi_static:
      return t / (d * (t + d));
    case AsymptoticRegime::thin_skin:
      return 3.0 * std::pow(lambda, 3) / (std::pow(d, 4) * std::cos(pi / 4 - phi / 2));
    case AsymptoticRegime::thin_slab: {
      const double l2 = lambda * lambda;
      return 6.0 * l2 * l2 * (d * t - 8.0 * l2 * std::sin(phi)) / (std::pow(d, 5) * t * t);
    }
  }
  return 0.0;
}

double interpolated_shape(double d, double t, double lambda, double phi) {
  if (!std::isfinite(lambda)) return t / (d * (t + d));
  const double c = std::cos(pi / 4 - phi / 2);
  const double alpha = (d * t + 8.0 * lambda * lambda * std::sin(phi)) / (2.0 * d * lambda * c);
  const double g = (d + 2.0 * lambda);
  // numerator and denominator divided by lambda^3
  const double den = 3.0 * d * (d + t) + (-std::expm1(-alpha)) * t * d * d * (g / lambda) * (g / lambda) * c / lambda;
  return 3.0 * t / den;
}

namespace {

void require_unit_K(const Material& m, double omega) {
  const cplx K = m.K(omega);
  if (K != cplx(1.0, 0.0))
    throw DomainError("asymptotic limits are derived for K = 1 and Im(mu) = 0");
}

}  // namespace

DissipationKernel gamma_asymptotic(const SlabSystem& slab, const Material& m, double omega,
                                   std::optional<AsymptoticRegime> regime, double margin) {
  require_unit_K(m, omega);
  const double lambda = skin_depth(m, omega);
  const double phi = omega == 0.0 ? 0.0 : m.phi(omega);
  const double re_sigma = m.is_london() ? 0.0 : (omega == 0.0 ? m.sigma(0.0) : m.sigma(omega)).real();
  DissipationKernel out;
  out.method = GammaMethod::asymptotic;
  out.n_hat = slab.n_hat;
  AsymptoticRegime r;
  if (regime) {
    r = *regime;
    RegimeCheck chk = check_regime(r, slab.d, slab.t, lambda, margin);
    if (!chk.satisfied)
      out.warnings.push_back(std::string("regime ") + to_string(r) +
                             " inequality holds only with margin " + std::to_string(chk.margin));
  } else {
    auto det = detect_regime(slab.d, slab.t, lambda, margin);
    if (det) {
      r = *det;
    } else {
      double best = -1;
      r = AsymptoticRegime::quasi_static;
      for (auto c : {AsymptoticRegime::quasi_static, AsymptoticRegime::thin_skin,
                     AsymptoticRegime::thin_slab}) {
        RegimeCheck chk = check_regime(c, slab.d, slab.t, lambda, margin);
        if (chk.margin > best) {
          best = chk.margin;
          r = c;
        }
      }
      out.warnings.push_back(std::string("no regime satisfied; nearest is ") + to_string(r));
    }
  }
  out.regime = r;
  if (r != AsymptoticRegime::quasi_static && !std::isfinite(lambda))
    throw DomainError("asymptotic: skin depth is infinite, only quasi-static applies");
  double shape = asymptotic_shape(r, slab.d, slab.t, lambda, phi);
  if (shape < 0.0) {
    out.warnings.push_back("thin-slab correction exceeds the leading term; clamped to zero");
    shape = 0.0;
  }
  double g = mu_0 * mu_0 * re_sigma / (64.0 * pi) * shape;
  if (slab.config == SlabConfig::two_slab_midpoint) g *= 2.0;
  out.gamma = g;
  return out;
}

DissipationKernel gamma_interpolated(const SlabSystem& slab, const Material& m, double omega) {
  const cplx K = m.K(omega);
  DissipationKernel out;
  out.method = GammaMethod::interpolated;
  out.n_hat = slab.n_hat;
  if (std::abs(K - 1.0) > 1e-3) out.warnings.push_back("interpolation assumes K = 1");
  const double lambda = skin_depth(m, omega);
  const double phi = omega == 0.0 ? 0.0 : m.phi(omega);
  const double re_sigma = m.is_london() ? 0.0 : (omega == 0.0 ? m.sigma(0.0) : m.sigma(omega)).real();
  double g = mu_0 * mu_0 * re_sigma / (64.0 * pi) * interpolated_shape(slab.d, slab.t, lambda, phi);
  if (slab.config == SlabConfig::two_slab_midpoint) g *= 2.0;
  out.gamma = g;
  return out;
}

SurveyGrid SurveyGrid::standard(int nt, int nl) {
  SurveyGrid g;
  auto logspace = [](double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(lo * std::pow(hi / lo, n == 1 ? 0.0 : double(i) / (n - 1)));
    return v;
  };
  g.d = logspace(1e-3, 1e3, 7);
  g.t = logspace(1e-3, 1e3, nt);
  g.lambda_over_d = logspace(1e-3, 1e3, nl);
  g.phi = {0.0, pi / 8, pi / 4, 3 * pi / 8, pi / 2};
  return g;
}

namespace {

SurveyPoint survey_point(const SurveyGrid& grid, double d, double t, double lod, double phi) {
  SurveyPoint sp{};
  sp.d = d;
  sp.t = t;
  sp.phi = phi;
  sp.omega = grid.omega;
  sp.lambda = lod * d;
  sp.sigma_mag = 1.0 / (grid.omega * mu_0 * sp.lambda * sp.lambda);
  const double re_sigma = sp.sigma_mag * std::cos(phi);
  auto reg = detect_regime(d, t, sp.lambda);
  sp.regime = reg ? to_string(*reg) : "transition";
  try {
    SlabIntegrandParams p;
    p.d = d;
    p.t = t;
    p.K = 1.0;
    p.omega_mu_sigma = grid.omega * mu_0 * std::polar(sp.sigma_mag, -phi);
    p.a = 1.0;  // per unit Re(sigma); well defined at phi = pi/2
    const double one = integrate_slab(p, grid.quad);
    const double interp = mu_0 * mu_0 / (64.0 * pi) * interpolated_shape(d, t, sp.lambda, phi);
    if (grid.two_slab) {
      p.two_slab = true;
      const double two = integrate_slab(p, grid.quad);
      sp.gamma_quad = re_sigma * two;
      sp.gamma_interp = re_sigma * 2.0 * one;
      sp.err_db = 10.0 * std::log10(two / (2.0 * one));
    } else {
      sp.gamma_quad = re_sigma * one;
      sp.gamma_interp = re_sigma * interp;
      sp.err_db = 10.0 * std::log10(interp / one);
    }
  } catch (const std::exception& e) {
    sp.error = e.what();
    sp.err_db = std::numeric_limits<double>::quiet_NaN();
  }
  return sp;
}

}  // namespace

SurveyReport survey_design_space(const SurveyGrid& grid) {
  struct Idx { double d, t, l, p; };
  std::vector<Idx> idx;
  for (double d : grid.d)
    for (double t : grid.t)
      for (double l : grid.lambda_over_d)
        for (double p : grid.phi) idx.push_back({d, t, l, p});
  SurveyReport rep;
  rep.two_slab = grid.two_slab;
  rep.points.resize(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i)
    rep.points[i] = survey_point(grid, idx[i].d, idx[i].t, idx[i].l, idx[i].p);
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const auto& sp = rep.points[i];
    if (!sp.error.empty()) {
      ++rep.failures;
      continue;
    }
    if (sp.err_db > rep.max_db) {
      rep.max_db = sp.err_db;
      rep.argmax = i;
    }
    if (sp.err_db < rep.min_db) {
      rep.min_db = sp.err_db;
      rep.argmin = i;
    }
  }
  return rep;
}

}  // namespace magnoise

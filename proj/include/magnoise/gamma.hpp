#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magnoise/core.hpp"
#include "magnoise/quadrature.hpp"

namespace magnoise {

enum class GammaMethod { quadrature, static_limit, asymptotic, interpolated, bath };
enum class AsymptoticRegime { quasi_static, thin_skin, thin_slab };

const char* to_string(GammaMethod m);
const char* to_string(AsymptoticRegime r);
std::optional<AsymptoticRegime> regime_from_string(const std::string& s);

struct DissipationKernel {
  double gamma = 0;  // T^2 s / J
  GammaMethod method = GammaMethod::quadrature;
  std::optional<AsymptoticRegime> regime;
  Vec3 n_hat = Vec3::UnitZ();
  double error_estimate = 0;
  std::vector<std::string> warnings;

  // (I + n n) Gamma
  Mat3 tensor() const;
};

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
  double tail_multiplier = 1.0;  // scales the initial truncation point in u = rho d
};

// Weights of the conductive and magnetic-loss terms in the rho integrand:
//   (a rho^3 + b rho^5) |K|^2 e^{-2 rho d} W(rho) / |D(rho)|^2
// with a = Re(sigma), b = Im(mu) / (omega |mu|^2).
struct SlabIntegrandParams {
  double d = 0, t = 0;
  cplx omega_mu_sigma{0, 0};  // omega mu sigma
  cplx K{1, 0};
  double a = 0;  // weight of rho^3 term
  double b = 0;  // weight of rho^5 term
  bool two_slab = false;
};

// rho-integrand (without the mu0^2 / 4pi prefactor). Finite for all rho >= 0.
double slab_integrand(double rho, const SlabIntegrandParams& p);

// mu0^2/(4 pi) * integral of slab_integrand over rho
double integrate_slab(const SlabIntegrandParams& p, const QuadratureConfig& cfg,
                      double* error = nullptr);

SlabIntegrandParams make_params(const SlabSystem& slab, const Material& m, double omega);

DissipationKernel gamma_integral(const SlabSystem& slab, const Material& m, double omega,
                                 const QuadratureConfig& cfg = {});
DissipationKernel gamma_two_slab(const SlabSystem& slab, const Material& m, double omega,
                                 const QuadratureConfig& cfg = {});
// omega -> 0+ limit; requires Im(mu) = 0.
DissipationKernel gamma_static(const SlabSystem& slab, const Material& m,
                               const QuadratureConfig& cfg = {});
// Dispatch on slab.config, and on omega == 0 to the static limit.
DissipationKernel gamma_auto(const SlabSystem& slab, const Material& m, double omega,
                             const QuadratureConfig& cfg = {});

struct RegimeCheck {
  AsymptoticRegime regime;
  bool satisfied;
  double margin;  // smallest ratio among the defining inequalities
};

std::optional<AsymptoticRegime> detect_regime(double d, double t, double lambda,
                                              double margin = 10.0);
RegimeCheck check_regime(AsymptoticRegime r, double d, double t, double lambda,
                         double margin = 10.0);

DissipationKernel gamma_asymptotic(const SlabSystem& slab, const Material& m, double omega,
                                   std::optional<AsymptoticRegime> regime = std::nullopt,
                                   double margin = 10.0);
DissipationKernel gamma_interpolated(const SlabSystem& slab, const Material& m, double omega);

// Shape functions with the Re(sigma) mu0^2/(64 pi) factor removed; lambda may be inf.
double asymptotic_shape(AsymptoticRegime r, double d, double t, double lambda, double phi);
double interpolated_shape(double d, double t, double lambda, double phi);

// Survey of interpolation accuracy against quadrature.
struct SurveyGrid {
  std::vector<double> d, t, lambda_over_d, phi;
  double omega = 2 * constants::pi * 1e3;
  bool two_slab = false;
  QuadratureConfig quad;

  static SurveyGrid standard(int points_per_axis_t = 15, int points_per_axis_lambda = 27);
  std::size_t size() const { return d.size() * t.size() * lambda_over_d.size() * phi.size(); }
};

struct SurveyPoint {
  double d, t, sigma_mag, phi, omega, lambda;
  double gamma_quad, gamma_interp;  // gamma_interp holds 2 Gamma in two-slab mode
  double err_db;
  std::string regime;
  std::string error;  // non-empty when this point failed
};

struct SurveyReport {
  std::vector<SurveyPoint> points;
  double max_db = -1e300, min_db = 1e300;
  std::size_t argmax = 0, argmin = 0;
  std::size_t failures = 0;
  bool two_slab = false;
};

SurveyReport survey_design_space(const SurveyGrid& grid);

}  // namespace magnoise

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "magnoise/bath.hpp"
#include "magnoise/core.hpp"

namespace magnoise {

// Scalar frequency kernel with the metadata needed to decide convergence
// before integrating: f ~ omega^tail_exponent at large omega, or f = 0 above cutoff.
struct KernelSpectrum {
  std::function<double(double)> fn;
  std::optional<double> tail_exponent;
  std::optional<double> cutoff;
  std::vector<double> breakpoints;
};

struct TensorSpectrum {
  std::function<Mat3(double)> fn;
  std::optional<double> tail_exponent;
  std::optional<double> cutoff;
  std::vector<double> breakpoints;
};

// G_rho{f; y} = int_0^inf f(x) (x + y)^-rho dx
struct StieltjesSpec {
  std::function<double(double)> f;
  double order = 2.0;
  double shift = 0.0;
  std::optional<double> tail_exponent;
  std::optional<double> cutoff;
  std::vector<double> breakpoints;
  double rel_tol = 1e-8;
};

struct StieltjesValue {
  double value = 0;
  double error = 0;
};

StieltjesValue stieltjes_transform(const StieltjesSpec& spec);

enum class EntanglementMethod { exact_quadrature, approximate, discrete_sum };
const char* to_string(EntanglementMethod m);

struct EntanglementResult {
  double E = 0;
  EntanglementMethod method = EntanglementMethod::exact_quadrature;
  double error_estimate = 0;
  std::vector<std::string> warnings;
};

// E = (gamma^2 hbar / 4 pi) G_2{omega tr[(I - p p) Gamma(omega)]; omega0}.
// A scalar Gamma is expanded with `form` around n_hat: slab gives (I + n n) Gamma.
EntanglementResult spin_entanglement(const Vec3& p_hat, double omega0, double gamma,
                                     const KernelSpectrum& Gamma, const Vec3& n_hat,
                                     BathTensorForm form = BathTensorForm::slab,
                                     double rel_tol = 1e-8);
EntanglementResult spin_entanglement(const Vec3& p_hat, double omega0, double gamma,
                                     const TensorSpectrum& Gamma, double rel_tol = 1e-8);
// Delta-sum kernel: exact summation, no quadrature.
EntanglementResult spin_entanglement(const Vec3& p_hat, double omega0, const DiscreteBath& bath);

// ln(omega_c/omega0) / (2 pi omega0 T1), T1 at zero temperature
EntanglementResult approximate_entanglement(double omega0, double t1_zero_temperature,
                                            double omega_c);
// Same with T1 built from Gamma(omega0) on the slab (T forced to zero).
EntanglementResult approximate_entanglement(const SpinContext& ctx, double gamma_at_omega0,
                                            const Vec3& n_hat, double omega_c);

// E = (1/2 pi) G_2{omega Re mu~(omega); omega0}
EntanglementResult oscillator_entanglement(const KernelSpectrum& re_mu, double omega0,
                                           double rel_tol = 1e-8);
EntanglementResult oscillator_entanglement(const DiscreteBath& bath, double omega0);
// ln(omega_c/omega0) / (2 pi Q)
double ohmic_approx(double Q, double omega_c, double omega0);

struct Renormalization {
  double frequency_ratio = 1;  // omega0'/omega0
  Mat3 anisotropy = Mat3::Zero();
  double error_estimate = 0;
};

// (omega0'/omega0)^2 = 1 + (2 / (pi omega0)) int_0^inf Re mu~
Renormalization oscillator_renormalization(const KernelSpectrum& re_mu, double omega0);
// C = (2/pi) int_0^inf Re G~
Renormalization spin_renormalization(const TensorSpectrum& re_G);
Renormalization spin_renormalization(const KernelSpectrum& re_G_scalar, const Vec3& n_hat,
                                     BathTensorForm form = BathTensorForm::slab);
// Both from the exact sums.
Renormalization renormalization(const DiscreteBath& bath, double omega0);

// (1/pi) P int re(w') / (omega - w') dw' over the grid span, with a natural cubic
// spline through the samples. Throws DomainError if the grid is too coarse at omega.
double kramers_kronig(const std::vector<double>& grid, const std::vector<double>& re_values,
                      double omega);

}  // namespace magnoise

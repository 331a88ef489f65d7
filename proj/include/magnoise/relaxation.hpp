#pragma once

#include <optional>
#include <vector>

#include "magnoise/core.hpp"
#include "magnoise/spectra.hpp"

namespace magnoise {

struct RelaxationTimes {
  double rate1 = 0, rate2 = 0;  // 1/s
  std::optional<double> rate1rho;

  double t1() const { return 1.0 / rate1; }
  double t2() const { return 1.0 / rate2; }
  double t1rho() const;
};

// Scalar Gamma at the frequencies the rates need.
struct GammaSamples {
  double at_zero = 0;
  double at_omega0 = 0;
  std::optional<double> at_omega1;
  Vec3 n_hat = Vec3::UnitZ();
};

// Closed forms in terms of Gamma, the angle to the slab normal and (for T1rho) beta.
RelaxationTimes relaxation_times_expanded(const SpinContext& ctx, const GammaSamples& g);

// Trace projections of arbitrary two-sided lab spectra. S_omega1 may be null.
RelaxationTimes relaxation_times_covariant(const SpinContext& ctx, const SpectralDensity& S_zero,
                                           const SpectralDensity& S_omega0,
                                           const SpectralDensity* S_omega1 = nullptr);

// Computes both forms and throws std::logic_error if they disagree beyond 1e-10 relative.
// want_t1rho without an rf field in ctx is a DomainError.
RelaxationTimes relaxation_times(const SpinContext& ctx, const GammaSamples& g,
                                 bool want_t1rho = false);

// (hbar/2) tanh(hbar gamma B0 / 2 k_B T) b, in units of hbar
Vec3 equilibrium_polarization(const SpinContext& ctx);

struct BlochState {
  double time = 0;
  Vec3 s = Vec3::Zero();  // units of hbar
};

struct BlochOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  double initial_step = 0;  // 0: derived from the rates
};

// Rotating-frame Bloch equation; returns the state at each requested time.
std::vector<BlochState> bloch_integrate(const BlochState& initial, const SpinContext& ctx,
                                        const RelaxationTimes& times,
                                        const std::vector<double>& sample_times,
                                        const BlochOptions& opt = {});
// Uniform sampling helper.
std::vector<BlochState> bloch_integrate(const BlochState& initial, const SpinContext& ctx,
                                        const RelaxationTimes& times, double duration,
                                        int samples, const BlochOptions& opt = {});

struct HyperfineSystem {
  double gamma_e = 0;  // rad/(s T)
  double gamma_n = 0;
  double A = 0;        // rad/s
  double B0 = 0;       // T
};

struct KaneResult {
  SpectralDensity S_eff;
  Mat3 K = Mat3::Identity();
  double amplification = 1;
  double omega0 = 0;  // (gamma_n B0 + 2A), rad/s
};

KaneResult kane_effective_density(const HyperfineSystem& hf, const SpectralDensity& S_lab,
                                  const Vec3& b_hat);

}  // namespace magnoise

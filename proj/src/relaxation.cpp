#include "magnoise/relaxation.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

namespace magnoise {

double RelaxationTimes::t1rho() const {
  if (!rate1rho) throw DomainError("T1rho not computed: no rf field");
  return 1.0 / *rate1rho;
}

RelaxationTimes relaxation_times_expanded(const SpinContext& ctx, const GammaSamples& g) {
  const double c = ctx.cos_theta(normalized(g.n_hat, "slab normal"));
  const double c2 = c * c;
  const double g2 = ctx.gamma * ctx.gamma;
  const double T = ctx.temperature;
  const double w0 = ctx.omega0();
  RelaxationTimes out;
  out.rate1 = 0.5 * g2 * (3.0 - c2) * g.at_omega0 * thermal_occupation_kernel(w0, T);
  out.rate2 = 0.5 * out.rate1 +
              0.5 * g2 * (1.0 + c2) * g.at_zero * thermal_occupation_kernel(0.0, T);
  if (ctx.rf) {
    if (!g.at_omega1) throw DomainError("T1rho needs Gamma at omega1");
    const double cb = ctx.cos_beta();
    const double w1 = ctx.omega1();
    out.rate1rho = (1.0 + cb * cb) * 0.5 * out.rate1 +
                   0.5 * g2 * (1.0 - cb * cb) * (1.0 + c2) * *g.at_omega1 *
                       thermal_occupation_kernel(w1, T);
  }
  return out;
}

RelaxationTimes relaxation_times_covariant(const SpinContext& ctx, const SpectralDensity& S0,
                                           const SpectralDensity& Sw0,
                                           const SpectralDensity* Sw1) {
  auto two = [](const SpectralDensity& s) { return convention_convert(s, Convention::two_sided); };
  const Mat3 P = ctx.b_hat * ctx.b_hat.transpose();
  const Mat3 Q = Mat3::Identity() - P;
  const double g2 = ctx.gamma * ctx.gamma;
  const SpectralDensity rot0 = rotating_frame_density(two(S0), two(Sw0), ctx.b_hat);
  RelaxationTimes out;
  out.rate1 = 0.5 * g2 * (Q * rot0.S).trace();
  out.rate2 = 0.5 * out.rate1 + 0.5 * g2 * (P * rot0.S).trace();
  if (Sw1) {
    if (!ctx.rf) throw DomainError("T1rho needs an rf field");
    const Vec3 b1 = ctx.rf->b1_hat;
    const Mat3 Q1 = Mat3::Identity() - b1 * b1.transpose();
    const SpectralDensity rot1 = rotating_frame_density(two(*Sw1), two(Sw0), ctx.b_hat);
    out.rate1rho = 0.5 * g2 * (Q1 * rot1.S).trace();
  }
  return out;
}

namespace {

bool close(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 || std::abs(a - b) <= 1e-10 * scale;
}

}  // namespace

RelaxationTimes relaxation_times(const SpinContext& ctx, const GammaSamples& g, bool want_t1rho) {
  if (want_t1rho && !ctx.rf) throw DomainError("T1rho requested without an rf field");
  SpinContext c = ctx;
  if (!want_t1rho) c.rf.reset();
  const RelaxationTimes ex = relaxation_times_expanded(c, g);

  auto lab = [&](double gamma, double omega) {
    DissipationKernel k;
    k.gamma = gamma;
    k.n_hat = normalized(g.n_hat, "slab normal");
    return lab_spectral_density(k, omega, c.temperature);
  };
  const SpectralDensity S0 = lab(g.at_zero, 0.0);
  const SpectralDensity Sw0 = lab(g.at_omega0, c.omega0());
  std::optional<SpectralDensity> Sw1;
  if (c.rf) Sw1 = lab(*g.at_omega1, c.omega1());
  const RelaxationTimes cov = relaxation_times_covariant(c, S0, Sw0, Sw1 ? &*Sw1 : nullptr);

  if (!close(ex.rate1, cov.rate1) || !close(ex.rate2, cov.rate2) ||
      (ex.rate1rho && !close(*ex.rate1rho, *cov.rate1rho)))
    throw std::logic_error("relaxation: covariant and expanded rates disagree");
  return ex;
}

Vec3 equilibrium_polarization(const SpinContext& ctx) {
  if (ctx.B0 == 0.0) return Vec3::Zero();
  if (ctx.temperature == 0.0) return 0.5 * ctx.b_hat;
  const double x = constants::hbar * ctx.gamma * ctx.B0 / (2.0 * constants::k_B * ctx.temperature);
  return 0.5 * std::tanh(x) * ctx.b_hat;
}

std::vector<BlochState> bloch_integrate(const BlochState& initial, const SpinContext& ctx,
                                        const RelaxationTimes& times,
                                        const std::vector<double>& sample_times,
                                        const BlochOptions& opt) {
  namespace ode = boost::numeric::odeint;
  using State = std::array<double, 3>;
  if (!std::isfinite(times.rate1) || !std::isfinite(times.rate2) || times.rate1 < 0 ||
      times.rate2 < 0)
    throw DomainError("bloch: rates must be finite and non-negative");
  for (std::size_t i = 1; i < sample_times.size(); ++i)
    if (!(sample_times[i] > sample_times[i - 1])) throw DomainError("bloch: times must increase");
  if (sample_times.empty()) return {};
  if (sample_times.front() < initial.time) throw DomainError("bloch: sample before start");

  const Vec3 b = ctx.b_hat;
  const Vec3 s0 = equilibrium_polarization(ctx);
  const double r1 = times.rate1, r2 = times.rate2;
  auto rhs = [&](const State& x, State& dx, double) {
    const Vec3 s(x[0], x[1], x[2]);
    const double sl = b.dot(s - s0);
    const Vec3 perp = s - b * b.dot(s);
    const Vec3 ds = -r1 * sl * b - r2 * perp;
    dx = {ds[0], ds[1], ds[2]};
  };

  State x{initial.s[0], initial.s[1], initial.s[2]};
  std::vector<BlochState> out;
  out.reserve(sample_times.size());
  const double rmax = std::max(r1, r2);
  double dt = opt.initial_step > 0 ? opt.initial_step : (rmax > 0 ? 1e-3 / rmax : 1.0);
  auto stepper = ode::make_dense_output(opt.abs_tol, opt.rel_tol, ode::runge_kutta_dopri5<State>());
  std::vector<double> ts;
  ts.push_back(initial.time);
  for (double t : sample_times)
    if (t > initial.time) ts.push_back(t);
  if (sample_times.front() == initial.time) out.push_back(initial);
  try {
    ode::integrate_times(stepper, rhs, x, ts.begin(), ts.end(), dt,
                         [&](const State& st, double t) {
                           if (t == initial.time) return;
                           out.push_back({t, Vec3(st[0], st[1], st[2])});
                         },
                         ode::max_step_checker(1000000));
  } catch (const ode::step_adjustment_error& e) {
    throw ConvergenceError(std::string("bloch: step size underflow: ") + e.what());
  } catch (const ode::no_progress_error& e) {
    throw ConvergenceError(std::string("bloch: no progress: ") + e.what());
  }
  return out;
}

std::vector<BlochState> bloch_integrate(const BlochState& initial, const SpinContext& ctx,
                                        const RelaxationTimes& times, double duration,
                                        int samples, const BlochOptions& opt) {
  if (!(duration > 0)) throw DomainError("bloch: duration must be positive");
  if (samples < 2) throw DomainError("bloch: need at least two samples");
  std::vector<double> ts;
  for (int i = 0; i < samples; ++i) ts.push_back(initial.time + duration * i / (samples - 1));
  return bloch_integrate(initial, ctx, times, ts, opt);
}

KaneResult kane_effective_density(const HyperfineSystem& hf, const SpectralDensity& S,
                                  const Vec3& b_hat) {
  if (!(hf.gamma_n * hf.B0 > 0)) throw DomainError("kane: gamma_n B0 must be positive");
  const Vec3 b = normalized(b_hat, "polarization axis");
  const Mat3 P = b * b.transpose();
  const double f = 1.0 + 2.0 * hf.A / (hf.gamma_n * hf.B0);
  KaneResult out;
  out.K = P + f * (Mat3::Identity() - P);
  out.S_eff = S;
  out.S_eff.S = out.K * S.S * out.K;
  out.amplification = f * f;
  out.omega0 = hf.gamma_n * hf.B0 + 2.0 * hf.A;
  return out;
}

}  // namespace magnoise

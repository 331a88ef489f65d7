// Acceptance checks 1-9, one PASS/FAIL line each. `--criterion N` runs a single one.
// Exit status: number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "magnoise/bath.hpp"
#include "magnoise/entanglement.hpp"
#include "magnoise/fields.hpp"
#include "magnoise/gamma.hpp"
#include "magnoise/relaxation.hpp"
#include "magnoise/scenarios.hpp"
#include "magnoise/spectra.hpp"

using namespace magnoise;

namespace {

constexpr double pi = constants::pi;
constexpr double mu0 = constants::mu_0;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome interpolation_accuracy() {
  const auto t0 = std::chrono::steady_clock::now();
  const SurveyReport r = survey_design_space(SurveyGrid::standard());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::size_t outside = 0;
  for (const auto& p : r.points)
    if (p.err_db < -0.6 || p.err_db > 1.85) ++outside;
  const auto& lo = r.points[r.argmin];
  const bool ok = r.failures == 0 && outside == 0 && secs < 300;
  return {ok, fmt("%zu points in %.1f s, dB range [%.4f, %.4f], %zu outside [-0.6, 1.85]; "
                  "worst at d=%g t=%g lambda=%g phi=%g",
                  r.points.size(), secs, r.min_db, r.max_db, outside, lo.d, lo.t, lo.lambda, lo.phi)};
}

Outcome two_slab_factor() {
  SurveyGrid g = SurveyGrid::standard();
  g.two_slab = true;
  const SurveyReport r = survey_design_space(g);
  const double worst = std::max(std::abs(r.min_db), std::abs(r.max_db));
  return {r.failures == 0 && worst <= 0.7,
          fmt("%zu points, max |10 log10(G'/2G)| = %.4f dB (limit 0.7)", r.points.size(), worst)};
}

Outcome atom_trap() {
  const ScenarioReport r = run_scenario(scenario_defaults("atom-trap"));
  const double s0 = r.output("sqrt_Snn_0").computed, s1 = r.output("sqrt_Snn_rolloff").computed;
  const double e = r.output("E_sqrt_Sd").computed;
  const bool ok = rel_err(s0, 1.2) <= 0.15 && rel_err(s1, 0.6) <= 0.15 && rel_err(e, 1.94e-20) <= 0.15;
  return {ok, fmt("sqrt(Snn) = %.4f pT/rtHz at 0 Hz, %.4f at 100 Hz; E sqrt(Sd) = %.4g eV/rtHz", s0, s1, e)};
}

Outcome mrfm() {
  const ScenarioReport r = run_scenario(scenario_defaults("mrfm"));
  const double B0 = r.output("B0").computed, f0 = r.output("f0_electron").computed;
  const double rate = r.output("rate1_electron").computed;
  const int maxima = static_cast<int>(r.output("sweep_rate1_local_maxima").computed);
  const auto& rows = r.sweep.rows;
  const bool rises = rows[1][2] > rows[0][2];
  const bool falls = rows[rows.size() - 1][2] < rows[rows.size() - 2][2];
  const bool ok = rel_err(B0, 0.58) <= 0.01 && rel_err(f0, 16.1) <= 0.01 && rate >= 1.0 &&
                  rate <= 100.0 && maxima == 1 && rises && falls;
  return {ok, fmt("B0 = %.4f T, f0 = %.3f GHz, 1/T1 = %.3f 1/s, sweep maxima = %d, rises %d falls %d",
                  B0, f0, rate, maxima, rises, falls)};
}

Outcome kane() {
  const double a = run_scenario(scenario_defaults("kane")).output("amplification").computed;
  return {rel_err(a, 7.2) <= 0.03, fmt("amplification = %.4f", a)};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const double d = 1e-3 * std::pow(10, 4 * u(rng) - 2), t = d * std::pow(10, 4 * u(rng) - 2);
    const double lam = d * std::pow(10, 4 * u(rng) - 2);
    const double sigma = 1e6 * std::pow(10, 2 * u(rng));
    const double w = 1 / (mu0 * sigma * lam * lam);
    const Material m = Material::conductor(std::polar(sigma, -pi / 2 * 0.95 * u(rng)),
                                           mu0 * cplx(1 + 3 * u(rng), 0.5 * u(rng)));
    const Vec3 dip = Vec3(u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5).normalized();
    const SlabSystem s(d, t);
    const double gp = dissipated_power(s, m, w, dip).gamma;
    const double gq = gamma_integral(s, m, w, QuadratureConfig{1e-11, 0, 4000, 1}).gamma;
    worst = std::max(worst, rel_err(gp, gq));
  }
  return {worst <= 1e-6, fmt("20 random passive sets, worst relative difference %.3g", worst)};
}

Outcome entanglement_oracle() {
  const double gamma = 1.76e11, w0 = 1e9, wc = 1e6 * w0, G = 1e-9;
  const Vec3 n = Vec3::UnitZ(), p = Vec3::UnitX();
  KernelSpectrum K;
  K.fn = [&](double w) { return w <= wc ? G : 0.0; };
  K.cutoff = wc;
  const double quad = spin_entanglement(p, w0, gamma, K, n).E;
  const double closed = gamma * gamma * constants::hbar / (4 * pi) * 3.0 * G *
                        (std::log((w0 + wc) / w0) - wc / (w0 + wc));
  std::vector<double> edges{0.0};
  for (int i = 0; i < 512; ++i) edges.push_back(1e-4 * w0 * std::pow(wc / (1e-4 * w0), i / 511.0));
  const double disc = spin_entanglement(p, w0, sample_bath_from_gamma(K.fn, edges, gamma, n, BathTensorForm::slab)).E;
  const double e1 = rel_err(disc, quad), e2 = rel_err(quad, closed);
  return {e1 <= 5e-3 && e2 <= 1e-8,
          fmt("512-bin bath vs quadrature %.3g (limit 5e-3); quadrature vs closed form %.3g (limit 1e-8)", e1, e2)};
}

double fitted_rate(const std::vector<BlochState>& traj, const std::function<double(const BlochState&)>& proj) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = traj.size();
  for (const auto& s : traj) {
    const double y = std::log(std::abs(proj(s)));
    st += s.time;
    sy += y;
    stt += s.time * s.time;
    sty += s.time * y;
  }
  return -(n * sty - st * sy) / (n * stt - st * st);
}

Outcome bloch_dynamics() {
  const SpinContext ctx(1.76e11, 0.576, Vec3(1, 1, 1).normalized(), 4.0);
  const SlabSystem slab(50e-9, 50e-9);
  const Material m = Material::conductor(4e6);
  GammaSamples g;
  g.at_zero = gamma_static(slab, m).gamma;
  g.at_omega0 = gamma_integral(slab, m, ctx.omega0()).gamma;
  const RelaxationTimes rt = relaxation_times(ctx, g);
  const Vec3 b = ctx.b_hat, s0 = equilibrium_polarization(ctx);
  BlochState init;
  init.s = 0.5 * b.unitOrthogonal() + 0.1 * b;
  const auto traj = bloch_integrate(init, ctx, rt, 3.0 * rt.t1(), 200);
  const double r1 = fitted_rate(traj, [&](const BlochState& s) { return b.dot(s.s - s0); });
  const double r2 = fitted_rate(traj, [&](const BlochState& s) { return (s.s - b * b.dot(s.s)).norm(); });
  BlochState eq;
  eq.s = s0;
  double drift = 0;
  for (const auto& s : bloch_integrate(eq, ctx, rt, 10 * rt.t1(), 100)) drift = std::max(drift, (s.s - s0).norm() / s0.norm());
  const double e1 = rel_err(r1, rt.rate1), e2 = rel_err(r2, rt.rate2);
  return {e1 <= 1e-3 && e2 <= 1e-3 && drift <= 1e-8,
          fmt("fitted 1/T1 error %.3g, 1/T2 error %.3g, equilibrium drift %.3g over 10 T1", e1, e2, drift)};
}

Outcome property_suites() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  // superconductor
  double sc = 0;
  for (int i = 0; i < 10; ++i) {
    const double d = std::pow(10, -6 + 4 * u(rng));
    sc = std::max(sc, gamma_integral(SlabSystem(d, d * (0.1 + u(rng))), Material::london(1e-7), std::pow(10, 10 * u(rng))).gamma);
  }
  // PSD
  double min_eig = 0;
  for (int i = 0; i < 50; ++i) {
    const double d = std::pow(10, -6 + 4 * u(rng)), w = std::pow(10, 2 + 8 * u(rng));
    const Material m = Material::conductor(std::polar(std::pow(10, 4 + 4 * u(rng)), -pi / 2 * u(rng)),
                                           mu0 * cplx(1 + u(rng), u(rng)));
    DissipationKernel k = gamma_integral(SlabSystem(d, d * std::pow(10, 2 * u(rng) - 1)), m, w);
    k.n_hat = Vec3(u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5).normalized();
    const SpectralDensity S = lab_spectral_density(k, w, 300 * u(rng));
    Eigen::SelfAdjointEigenSolver<Mat3> es(S.S);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff() / S.S.trace());
  }
  // causality
  DiscreteBath bath;
  for (int i = 0; i < 20; ++i)
    bath.add({1 + 10 * u(rng), u(rng), Vec3(u(rng) - 0.5, u(rng) - 0.5, u(rng) - 0.5)});
  double acausal = 0;
  for (double tau : {-1e-12, -1.0, -1e3}) acausal = std::max(acausal, memory_kernel(bath, tau).norm());
  // covariant vs expanded
  double cov = 0;
  for (int i = 0; i < 200; ++i) {
    auto unit = [&] {
      const double c = 2 * u(rng) - 1, ph = 2 * pi * u(rng), s = std::sqrt(1 - c * c);
      return Vec3(s * std::cos(ph), s * std::sin(ph), c);
    };
    const SpinContext ctx(1.76e11, 0.1 + u(rng), unit(), 10 * u(rng), RfField{1e-3, unit()});
    GammaSamples g;
    g.at_zero = 1e-6 * u(rng);
    g.at_omega0 = 1e-6 * u(rng);
    g.at_omega1 = 1e-6 * u(rng);
    g.n_hat = unit();
    const auto ex = relaxation_times_expanded(ctx, g);
    auto two = [&](double G, double w) {
      DissipationKernel k;
      k.gamma = G;
      k.n_hat = g.n_hat;
      return lab_spectral_density(k, w, ctx.temperature);
    };
    const SpectralDensity S1 = two(*g.at_omega1, ctx.omega1());
    const auto cv = relaxation_times_covariant(ctx, two(g.at_zero, 0), two(g.at_omega0, ctx.omega0()), &S1);
    cov = std::max({cov, rel_err(cv.rate1, ex.rate1), rel_err(cv.rate2, ex.rate2), rel_err(*cv.rate1rho, *ex.rate1rho)});
  }
  // Kramers-Kronig
  const double a = 2.0, w = 5.0;
  std::vector<double> grid, re;
  for (int i = -2000; i <= 2000; ++i) {
    const double x = 100 * w * std::sinh(10.0 * i / 2000) / std::sinh(10.0);
    grid.push_back(x);
    re.push_back(a / (1 + (x / w) * (x / w)));
  }
  const double kk = rel_err(kramers_kronig(grid, re, w), a / 2);
  const bool ok = sc == 0.0 && min_eig >= -1e-15 && acausal == 0.0 && cov <= 1e-12 && kk <= 1e-4;
  return {ok, fmt("superconductor max Gamma %g; min PSD eigenvalue/trace %.3g; acausal kernel %g; "
                  "covariant vs expanded %.3g; KK Lorentzian %.3g",
                  sc, min_eig, acausal, cov, kk)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"interpolation accuracy", interpolation_accuracy},
      {"two-slab factor", two_slab_factor},
      {"atom-trap scenario", atom_trap},
      {"MRFM scenario", mrfm},
      {"Kane scenario", kane},
      {"power vs quadrature oracle", oracle_equivalence},
      {"entanglement oracle", entanglement_oracle},
      {"Bloch dynamics", bloch_dynamics},
      {"property suites", property_suites},
  };
  int only = 0;
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) only = std::atoi(argv[2]);
  if (only < 0 || only > static_cast<int>(criteria.size()) || (argc != 1 && only == 0)) {
    std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i + 1) != only) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed;
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "magnoise/relaxation.hpp"

using namespace magnoise;
using doctest::Approx;

namespace {

Vec3 unit(double theta, double phi) {
  return Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
}

// slope of log|y| against t by least squares
double fitted_rate(const std::vector<BlochState>& traj, auto proj) {
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

}  // namespace

TEST_CASE("covariant and expanded rates agree for random angles") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 200; ++i) {
    const Vec3 b = unit(std::acos(2 * u(rng) - 1), 2 * constants::pi * u(rng));
    const Vec3 b1 = unit(std::acos(2 * u(rng) - 1), 2 * constants::pi * u(rng));
    const SpinContext ctx(1.76e11, 0.1 + u(rng), b, 10 * u(rng), RfField{1e-3 * (0.1 + u(rng)), b1});
    GammaSamples g;
    g.at_zero = 1e-6 * (0.5 + u(rng));
    g.at_omega0 = 1e-6 * u(rng);
    g.at_omega1 = 1e-6 * u(rng);
    g.n_hat = unit(std::acos(2 * u(rng) - 1), 2 * constants::pi * u(rng));
    const auto ex = relaxation_times_expanded(ctx, g);
    RelaxationTimes cov;
    CHECK_NOTHROW(cov = relaxation_times(ctx, g, true));
    CHECK(cov.rate1 == Approx(ex.rate1).epsilon(1e-12));
    CHECK(cov.rate2 == Approx(ex.rate2).epsilon(1e-12));
    CHECK(*cov.rate1rho == Approx(*ex.rate1rho).epsilon(1e-12));
  }
}

TEST_CASE("zero-temperature secular term vanishes") {
  const SpinContext ctx(1.76e11, 0.5, Vec3::UnitZ(), 0.0);
  GammaSamples g{1e-6, 5e-7};
  const auto r = relaxation_times(ctx, g);
  CHECK(r.rate2 - 0.5 * r.rate1 == Approx(0.0).scale(r.rate1));
}

TEST_CASE("T1rho without an rf field is a domain error") {
  const SpinContext ctx(1.76e11, 0.5, Vec3::UnitZ(), 4.0);
  CHECK_THROWS_AS(relaxation_times(ctx, GammaSamples{1e-6, 1e-6}, true), DomainError);
  CHECK_THROWS_AS(RelaxationTimes{}.t1rho(), DomainError);
}

TEST_CASE("equilibrium polarization") {
  CHECK(equilibrium_polarization(SpinContext(1.0, 1.0, Vec3::UnitY(), 0.0)).isApprox(0.5 * Vec3::UnitY()));
  CHECK(equilibrium_polarization(SpinContext(1.0, 0.0, Vec3::UnitY(), 1.0)).isZero(0.0));
  const double T = 1.0, gamma = 1.76e11;
  const double B0 = 2 * constants::k_B * T / (constants::hbar * gamma);
  const Vec3 p = equilibrium_polarization(SpinContext(gamma, B0, Vec3::UnitZ(), T));
  CHECK(p.z() == Approx(0.5 * std::tanh(1.0)).epsilon(1e-14));
  CHECK(p.z() == Approx(0.3808).epsilon(1e-4));
}

TEST_CASE("Bloch trajectory recovers the input rates") {
  const SpinContext ctx(1.76e11, 0.5, Vec3(1, 1, 1).normalized(), 4.0);
  RelaxationTimes rt;
  rt.rate1 = 2.0;
  rt.rate2 = 3.5;
  const Vec3 s0 = equilibrium_polarization(ctx);
  const Vec3 b = ctx.b_hat;
  const Vec3 e = b.unitOrthogonal();

  BlochState init;
  init.s = 0.5 * e + 0.1 * b;
  const auto traj = bloch_integrate(init, ctx, rt, 3.0 * rt.t1(), 200);
  const double r1 = fitted_rate(traj, [&](const BlochState& s) { return b.dot(s.s - s0); });
  const double r2 = fitted_rate(traj, [&](const BlochState& s) { return (s.s - b * b.dot(s.s)).norm(); });
  CHECK(r1 == Approx(rt.rate1).epsilon(1e-3));
  CHECK(r2 == Approx(rt.rate2).epsilon(1e-3));

  // T2 ln 2 halves the transverse part
  const auto half = bloch_integrate(init, ctx, rt, std::vector<double>{rt.t2() * std::log(2.0)});
  const Vec3 tr = half.back().s - b * b.dot(half.back().s);
  CHECK(tr.norm() == Approx(0.25).epsilon(1e-6));
}

TEST_CASE("equilibrium is a fixed point") {
  const SpinContext ctx(1.76e11, 0.5, Vec3::UnitX(), 4.0);
  RelaxationTimes rt;
  rt.rate1 = 1.0;
  rt.rate2 = 1.5;
  BlochState init;
  init.s = equilibrium_polarization(ctx);
  for (const auto& s : bloch_integrate(init, ctx, rt, 10 * rt.t1(), 50))
    CHECK((s.s - init.s).norm() <= 1e-8 * init.s.norm());
}

TEST_CASE("hyperfine effective density") {
  SpectralDensity S;
  S.S = Vec3(1.0, 1.0, 2.0).asDiagonal();
  const HyperfineSystem none{2 * constants::pi * 28e9, 2 * constants::pi * 17.25e6, 0.0, 2.0};
  const auto k0 = kane_effective_density(none, S, Vec3::UnitZ());
  CHECK(k0.K.isApprox(Mat3::Identity()));
  CHECK(k0.S_eff.S.isApprox(S.S));
  CHECK(k0.amplification == 1.0);

  const HyperfineSystem kane{2 * constants::pi * 28e9, 2 * constants::pi * 17.25e6,
                             2 * constants::pi * 29e6, 2.0};
  const auto k = kane_effective_density(kane, S, Vec3::UnitZ());
  CHECK(k.amplification == Approx(7.2).epsilon(0.03));
  CHECK(k.omega0 == Approx(2 * constants::pi * 92.5e6).epsilon(1e-12));
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "magnoise/gamma.hpp"

using namespace magnoise;
using doctest::Approx;

namespace {

constexpr double mu0 = constants::mu_0;
constexpr double pi = constants::pi;
const Material copper = Material::conductor(5.9e7);

SlabSystem pair(double d, double t) { return SlabSystem(d, t, Vec3::UnitZ(), SlabConfig::two_slab_midpoint); }

double omega_for_lambda(double lambda, double sigma) { return 1.0 / (mu0 * sigma * lambda * lambda); }

}  // namespace

TEST_CASE("ideal superconductor does not dissipate") {
  const Material sc = Material::london(100e-9);
  for (double d : {1e-8, 1e-5, 1e-2})
    for (double w : {1.0, 1e4, 1e10}) {
      CHECK(gamma_integral(SlabSystem(d, d), sc, w).gamma == 0.0);
      CHECK(gamma_two_slab(pair(d, d), sc, w).gamma == 0.0);
    }
}

TEST_CASE("quasi-static limit for copper at d = t = 1 cm") {
  const SlabSystem s(0.01, 0.01);
  const double lim = mu0 * mu0 * 5.9e7 * 0.01 / (64 * pi * 0.01 * 0.02);
  CHECK(lim == Approx(2.32e-5).epsilon(2e-3));
  const auto g0 = gamma_static(s, copper);
  CHECK(g0.gamma == Approx(lim).epsilon(1e-9));
  CHECK(gamma_integral(s, copper, 1e-3).gamma == Approx(lim).epsilon(0.02));
  const auto asym = gamma_asymptotic(s, copper, 0.0, AsymptoticRegime::quasi_static);
  CHECK(asym.gamma == Approx(g0.gamma).epsilon(5e-4));
  const auto interp = gamma_interpolated(s, copper, 0.0);
  CHECK(interp.gamma == Approx(g0.gamma).epsilon(5e-4));
  CHECK(gamma_auto(s, copper, 0.0).method == GammaMethod::static_limit);
}

TEST_CASE("thin-skin limit") {
  const double d = 0.01, t = 1e-3, lambda = 1e-2 * t;
  const double w = omega_for_lambda(lambda, 5.9e7);
  const double lim = 3 * mu0 * mu0 * 5.9e7 * std::pow(lambda, 3) / (64 * pi * std::pow(d, 4) * std::cos(pi / 4));
  const auto q = gamma_integral(SlabSystem(d, t), copper, w);
  CHECK(q.gamma == Approx(lim).epsilon(0.02));
  CHECK(gamma_asymptotic(SlabSystem(d, t), copper, w).gamma == Approx(lim).epsilon(1e-12));

  // the residual is first order in lambda/d
  auto rel = [&](double lam) {
    const double ww = omega_for_lambda(lam, 5.9e7);
    const double l = 3 * mu0 * mu0 * 5.9e7 * std::pow(lam, 3) / (64 * pi * std::pow(d, 4) * std::cos(pi / 4));
    return l / gamma_integral(SlabSystem(d, 10 * d), copper, ww).gamma - 1;
  };
  const double r1 = rel(1e-4 * d), r2 = rel(1e-5 * d);
  CHECK(r1 / r2 == Approx(10.0).epsilon(2e-3));
}

TEST_CASE("thin-skin divisor at phi = pi/2") {
  const double lam = 1e-6;
  const double a = asymptotic_shape(AsymptoticRegime::thin_skin, 1e-2, 1e-2, lam, pi / 2);
  const double b = asymptotic_shape(AsymptoticRegime::thin_skin, 1e-2, 1e-2, lam, 0);
  CHECK(a / b == Approx(std::cos(pi / 4)).epsilon(1e-14));
}

TEST_CASE("interpolation tends to the quasi-static value") {
  const double d = 1e-3, t = 2e-3;
  const double qs = asymptotic_shape(AsymptoticRegime::quasi_static, d, t, INFINITY, 0);
  CHECK(interpolated_shape(d, t, 1e6 * d, 0) / qs == Approx(1.0).epsilon(1e-5));
  CHECK(interpolated_shape(d, t, INFINITY, 0) / qs == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("positivity, tensor structure and finite integrand") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3), ph(0, pi / 2 - 1e-3);
  for (int i = 0; i < 40; ++i) {
    const double d = std::pow(10, u(rng)) * 1e-3, t = std::pow(10, u(rng)) * 1e-3;
    const double lam = std::pow(10, u(rng)) * d;
    const double sig = 1e7;
    const double w = omega_for_lambda(lam, sig);
    const Material m = Material::conductor(std::polar(sig, -ph(rng)),
                                           mu0 * cplx(1 + std::abs(u(rng)), 0.1 * std::abs(u(rng))));
    const auto g = gamma_integral(SlabSystem(d, t), m, w);
    CHECK(g.gamma > 0);
    const Mat3 T = g.tensor();
    CHECK(T(2, 2) == 2 * T(0, 0));
    CHECK(T(0, 0) == T(1, 1));
    const auto p = make_params(SlabSystem(d, t), m, w);
    for (double rt : {1e-6, 1.0, 1e2, 1e4}) CHECK(std::isfinite(slab_integrand(rt / t, p)));
  }
}

TEST_CASE("two-slab bounds and large-d limit") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 20; ++i) {
    const double d = 1e-3 * std::pow(10, u(rng)), t = d * std::pow(10, u(rng));
    const double w = omega_for_lambda(d * std::pow(10, u(rng)), 5.9e7);
    const double g1 = gamma_integral(SlabSystem(d, t), copper, w).gamma;
    const double g2 = gamma_two_slab(pair(d, t), copper, w).gamma;
    CHECK(g2 <= 2 * g1 * (1 + 1e-9));
  }
  // weak coupling: no reflections between the slabs
  const SlabSystem s(0.01, 0.01);
  CHECK(gamma_static(pair(0.01, 0.01), copper).gamma / gamma_static(s, copper).gamma == Approx(2.0).epsilon(1e-9));
  // mirror limit d >> lambda: the image series gives (3/2) zeta(3), not 2
  const double t = 1e-3, w = omega_for_lambda(1.2e-3, 5.9e7);
  const double ratio = gamma_two_slab(pair(1e4 * t, t), copper, w).gamma / gamma_integral(SlabSystem(1e4 * t, t), copper, w).gamma;
  CHECK(ratio == Approx(1.5 * 1.2020569031595943).epsilon(1e-5));
}

TEST_CASE("auto dispatch follows the slab configuration") {
  const double w = 2 * pi * 100;
  CHECK(gamma_auto(pair(0.02, 0.01), copper, w).gamma == gamma_two_slab(pair(0.02, 0.01), copper, w).gamma);
  CHECK(gamma_auto(SlabSystem(0.02, 0.01), copper, w).gamma == gamma_integral(SlabSystem(0.02, 0.01), copper, w).gamma);
  CHECK_THROWS_AS(gamma_two_slab(SlabSystem(0.02, 0.01), copper, w), DomainError);
}

TEST_CASE("regime detection") {
  CHECK(detect_regime(1, 1, 1e3) == AsymptoticRegime::quasi_static);
  CHECK(detect_regime(1, 1, 1e-3) == AsymptoticRegime::thin_skin);
  CHECK(detect_regime(1, 1e-5, 3e-4) == AsymptoticRegime::thin_slab);
  CHECK_FALSE(detect_regime(1, 1, 1).has_value());
  CHECK_FALSE(check_regime(AsymptoticRegime::thin_skin, 1, 1, 1).satisfied);
  const auto g = gamma_asymptotic(SlabSystem(1, 1), copper, omega_for_lambda(1, 5.9e7));
  CHECK_FALSE(g.warnings.empty());
}

TEST_CASE("single-point survey") {
  SurveyGrid g;
  g.d = {1e-2};
  g.t = {1e-2};
  g.lambda_over_d = {1.0};
  g.phi = {0.0};
  const auto rep = survey_design_space(g);
  REQUIRE(rep.points.size() == 1);
  const auto& p = rep.points[0];
  CHECK(p.gamma_quad > 0);
  CHECK(p.gamma_interp > 0);
  CHECK(p.err_db == Approx(10 * std::log10(p.gamma_interp / p.gamma_quad)));
  CHECK(rep.max_db == p.err_db);
  CHECK(rep.min_db == p.err_db);
}

TEST_CASE("standard survey extremes are frozen") {
  const auto one = survey_design_space(SurveyGrid::standard());
  CHECK(one.points.size() == 14175);
  CHECK(one.failures == 0);
  CHECK(one.min_db == Approx(-0.73114).epsilon(1e-4));
  CHECK(one.max_db == Approx(1.64840).epsilon(1e-4));
  SurveyGrid g = SurveyGrid::standard();
  g.two_slab = true;
  const auto two = survey_design_space(g);
  CHECK(two.min_db == Approx(-0.54980).epsilon(1e-4));
  CHECK(two.max_db <= 1e-12);
}

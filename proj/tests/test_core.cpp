#include <doctest.h>

#include <cmath>

#include "magnoise/core.hpp"
#include "magnoise/quadrature.hpp"
#include "magnoise/units.hpp"

using namespace magnoise;
using doctest::Approx;

TEST_CASE("skin depth") {
  const Material cu = Material::conductor(5.9e7);
  const double w = 2 * constants::pi * 100.0;
  CHECK(skin_depth(cu, w) == Approx(4.63e-3).epsilon(2e-3));

  const Material cu2 = Material::conductor(2 * 5.9e7);
  CHECK(skin_depth(cu2, w) / skin_depth(cu, w) == Approx(1 / std::sqrt(2.0)).epsilon(1e-14));

  const Material sc = Material::london(100e-9);
  for (double f : {1.0, 1e3, 1e9}) CHECK(skin_depth(sc, 2 * constants::pi * f) == Approx(100e-9).epsilon(1e-12));
  CHECK(std::isinf(skin_depth(cu, 0.0)));
}

TEST_CASE("material validation") {
  CHECK_THROWS_AS(Material::conductor(cplx(-1.0, 0)), DomainError);
  CHECK_THROWS_AS(Material::conductor(cplx(1.0, 1.0)), DomainError);  // phi < 0
  CHECK_THROWS_AS(Material::conductor(1.0, cplx(constants::mu_0, -1e-7)), DomainError);
  CHECK_THROWS_AS(Material::london(-1.0), DomainError);
  CHECK_NOTHROW(Material::conductor(std::polar(1.0, -constants::pi / 2)));
  const Material sc = Material::london(1e-7);
  CHECK(sc.phi(1e3) == Approx(constants::pi / 2));
  CHECK(sc.sigma(1e3).real() == 0.0);
}

TEST_CASE("thermal occupation kernel limits") {
  CHECK(thermal_occupation_kernel(1e-3, 300.0) == Approx(2 * constants::k_B * 300).epsilon(1e-9));
  CHECK(2 * constants::k_B * 300 == Approx(8.285e-21).epsilon(1e-3));
  CHECK(thermal_occupation_kernel(1e10, 0.0) == Approx(constants::hbar * 1e10).epsilon(1e-15));
  CHECK(thermal_occupation_kernel(1e10, 0.0) == Approx(1.055e-24).epsilon(1e-3));
  CHECK(thermal_occupation_kernel(0.0, 0.0) == 0.0);
  // x = hbar w / 2 kT = 0.0966
  const double T = 1.0;
  const double w = 0.0966 * 2 * constants::k_B * T / constants::hbar;
  CHECK(thermal_occupation_kernel(w, T) / (constants::hbar * w) == Approx(10.38).epsilon(1e-3));
  CHECK(thermal_occupation_kernel(-w, T) == Approx(thermal_occupation_kernel(w, T)));
}

TEST_CASE("spin context validation") {
  CHECK_THROWS_AS(SpinContext(1.0, 1.0, Vec3::Zero(), 0.0), DomainError);
  CHECK_THROWS_AS(SpinContext(1.0, 1.0, Vec3::UnitZ(), -1.0), DomainError);
  const SpinContext c(2.0, 3.0, Vec3(0, 0, 2), 0.0, RfField{0.5, Vec3::UnitX()});
  CHECK(c.omega0() == 6.0);
  CHECK(c.omega1() == 1.0);
  CHECK(c.b_hat.norm() == Approx(1.0));
}

TEST_CASE("slab system validation") {
  CHECK_THROWS_AS(SlabSystem(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(SlabSystem(1.0, -1.0), DomainError);
  const SlabSystem s(1.0, 1.0, Vec3(0, 0, 3));
  CHECK(s.n_hat.z() == Approx(1.0));
}

TEST_CASE("Gauss-Kronrod on smooth and endpoint-singular integrands") {
  auto r = quad::integrate([](double x) { return std::exp(-x); }, 0, 10);
  CHECK(r.converged);
  CHECK(r.value == Approx(1 - std::exp(-10.0)).epsilon(1e-13));

  r = quad::integrate([](double x) { return 1 / std::sqrt(x); }, 0, 1, {1e-10, 0, 4000});
  CHECK(r.converged);
  CHECK(r.value == Approx(2.0).epsilon(1e-9));

  const double bp[] = {0.3};
  r = quad::integrate([](double x) { return std::abs(x - 0.3); }, 0, 1, {}, bp);
  CHECK(r.value == Approx(0.045 + 0.245).epsilon(1e-13));
  CHECK(r.subdivisions <= 2);
}

TEST_CASE("non-convergence is reported") {
  quad::Options o;
  o.rel_tol = 1e-14;
  o.max_subdivisions = 3;
  auto f = [](double x) { return std::sin(1.0 / x); };
  const auto r = quad::integrate(f, 1e-6, 1.0, o);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(quad::integrate_or_throw(f, 1e-6, 1.0, o), ConvergenceError);
}

TEST_CASE("half-line integrals") {
  quad::HalfLineOptions o;
  o.inner.rel_tol = 1e-11;
  o.tail_exponent = -2;
  auto r = quad::integrate_half_line([](double x) { return 1 / (1 + x * x); }, o);
  CHECK(r.value == Approx(constants::pi / 2).epsilon(1e-9));

  o.scale = 1e-3;
  o.tail_exponent = -3;
  r = quad::integrate_half_line([](double x) { return x * std::exp(-1e3 * x); }, o);
  CHECK(r.value == Approx(1e-6).epsilon(1e-9));

  o.cutoff = 2.0;
  o.scale = 1.0;
  r = quad::integrate_half_line([](double x) { return x; }, o);
  CHECK(r.value == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("Wynn epsilon accelerates an alternating series") {
  quad::WynnEpsilon w;
  double s = 0;
  for (int k = 0; k < 12; ++k) {
    s += (k % 2 ? -1.0 : 1.0) / (k + 1);
    w.push(s);
  }
  CHECK(w.estimate() == Approx(std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("unit parsing") {
  CHECK(parse_quantity("1cm", Dimension::length).si() == Approx(0.01));
  CHECK(parse_quantity("5 nm", Dimension::length).si() == Approx(5e-9));
  CHECK(parse_quantity("2um", Dimension::length).si() == Approx(2e-6));
  CHECK(parse_quantity("2µm", Dimension::length).si() == Approx(2e-6));
  CHECK(parse_quantity("2μm", Dimension::length).si() == Approx(2e-6));
  CHECK(parse_quantity("3mm", Dimension::length).si() == Approx(3e-3));
  CHECK(parse_quantity("4m", Dimension::length).si() == 4.0);
  CHECK(parse_quantity("16.1GHz", Dimension::frequency).si() == Approx(16.1e9));
  CHECK(parse_quantity("7.59MHz", Dimension::frequency).si() == Approx(7.59e6));
  CHECK(parse_quantity("1kHz", Dimension::frequency).si() == Approx(1e3));
  CHECK(parse_quantity("100mK", Dimension::temperature).si() == Approx(0.1));
  CHECK(parse_quantity("0.58T", Dimension::magnetic_field).si() == Approx(0.58));
  CHECK(parse_quantity("1e-3", Dimension::length).si() == 1e-3);
  CHECK_THROWS_AS(parse_quantity("1Hz", Dimension::length), UnitError);
  CHECK_THROWS_AS(parse_quantity("1 furlong", Dimension::length), UnitError);
  CHECK_THROWS_AS(parse_quantity("abc", Dimension::length), UnitError);
  CHECK_THROWS_AS(parse_quantity("", Dimension::length), UnitError);
}

TEST_CASE("quantity round trip") {
  const std::pair<const char*, Dimension> cases[] = {
      {"1cm", Dimension::length},         {"2.5um", Dimension::length},
      {"16.1GHz", Dimension::frequency},  {"100mK", Dimension::temperature},
      {"0.576T", Dimension::magnetic_field}, {"1e-07", Dimension::length},
      {"3", Dimension::dimensionless}};
  for (const auto& [s, dim] : cases) {
    const Quantity q = parse_quantity(s, dim);
    const Quantity back = parse_quantity(q.str(), dim);
    CHECK(back.si() == q.si());
    CHECK(back.unit == q.unit);
  }
  CHECK(format_number(0.1) == "0.1");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

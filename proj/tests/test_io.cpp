#include <doctest.h>

#include <sstream>

#include "magnoise/io.hpp"
#include "magnoise/scenarios.hpp"

using namespace magnoise;
using doctest::Approx;

namespace {

std::string csv(const ScenarioReport& r) {
  std::ostringstream os;
  r.write_csv(os);
  return os.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config("# header\nthickness = 5nm  # trailing\n\n  B0=2T\n");
  REQUIRE(c.size() == 2);
  CHECK(c[0].key == "thickness");
  CHECK(c[0].value == "5nm");
  CHECK(c[0].line == 2);
  CHECK(c[1].key == "B0");
  CHECK(c[1].line == 4);

  auto line_of = [](const std::string& text) {
    try {
      parse_config(text, "f.cfg");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("f.cfg:") == 0);
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("a = 1\nno equals sign\n") == 2);
  CHECK(line_of("a = 1\n = 2\n") == 2);
  CHECK(line_of("a = \n") == 1);
  CHECK(line_of("a = 1\nb = 2\na = 3\n") == 3);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("scenario inputs validate keys and units") {
  ScenarioInputs in = scenario_defaults("kane");
  CHECK_THROWS_AS(in.set("no_such_key", "1"), ConfigError);
  CHECK_THROWS_AS(in.set("B0", "2cm"), UnitError);
  try {
    in.apply(parse_config("B0 = 1T\nthickness = 3Hz\n", "k.cfg"), "k.cfg");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
    CHECK(e.key() == "thickness");
  }
  CHECK_THROWS_AS(scenario_defaults("nope"), DomainError);
  CHECK(in.is_default("distance"));
}

TEST_CASE("echoed inputs reproduce the report byte for byte") {
  for (const auto& name : scenario_names()) {
    const ScenarioInputs def = scenario_defaults(name);
    const ScenarioReport a = run_scenario(def);
    ScenarioReport echo;
    echo.scenario = name;
    for (const auto& e : def.entries()) echo.inputs.emplace_back(e.key, e.text);
    ScenarioInputs back = scenario_defaults(name);
    back.apply(parse_config(echo.inputs_as_config()));
    const ScenarioReport b = run_scenario(back);
    CHECK(csv(a) == csv(b));
    CHECK(a.to_json() == b.to_json());
  }
}

TEST_CASE("overriding one input changes only dependent outputs") {
  const ScenarioInputs def = scenario_defaults("atom-trap");
  ScenarioInputs hot = def;
  hot.set("temperature", "600K");
  const auto a = run_scenario(def), b = run_scenario(hot);
  for (const char* same : {"gamma_prime_0", "gamma_prime_rolloff", "skin_depth_rolloff"})
    CHECK(a.output(same).computed == b.output(same).computed);
  CHECK(b.output("sqrt_Snn_0").computed == Approx(a.output("sqrt_Snn_0").computed * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(b.output("E_sqrt_Sd").computed != a.output("E_sqrt_Sd").computed);

  ScenarioInputs field = def;
  field.set("efield", "2e6");
  const auto c = run_scenario(field);
  CHECK(c.output("sqrt_Snn_0").computed == a.output("sqrt_Snn_0").computed);
  CHECK(c.output("sqrt_Sd").computed == Approx(a.output("sqrt_Sd").computed / 2).epsilon(1e-12));
}

TEST_CASE("scenario reference values") {
  const auto at = run_scenario(scenario_defaults("atom-trap"));
  CHECK(at.output("sqrt_Snn_0").computed == Approx(1.2).epsilon(0.15));
  CHECK(at.output("sqrt_Snn_rolloff").computed == Approx(0.6).epsilon(0.15));
  CHECK(at.output("E_sqrt_Sd").computed == Approx(1.94e-20).epsilon(0.15));
  CHECK(at.output("sqrt_Snn_0").ratio().has_value());

  const auto mr = run_scenario(scenario_defaults("mrfm"));
  CHECK(mr.output("B0").computed == Approx(0.58).epsilon(0.01));
  CHECK(mr.output("f0_electron").computed == Approx(16.1).epsilon(0.01));
  const double r1 = mr.output("rate1_electron").computed;
  CHECK(r1 > 1.0);
  CHECK(r1 < 100.0);
  CHECK(mr.output("sweep_rate1_local_maxima").computed == 1);

  const auto ka = run_scenario(scenario_defaults("kane"));
  CHECK(ka.output("amplification").computed == Approx(7.2).epsilon(0.03));
  ScenarioInputs none = scenario_defaults("kane");
  none.set("hyperfine_over_2pi", "0");
  CHECK(run_scenario(none).output("amplification").computed == 1.0);
}

TEST_CASE("two-sided convention halves reported densities") {
  const auto one = run_scenario(scenario_defaults("atom-trap"), Convention::one_sided);
  const auto two = run_scenario(scenario_defaults("atom-trap"), Convention::two_sided);
  CHECK(two.output("sqrt_Snn_0").computed == Approx(one.output("sqrt_Snn_0").computed / std::sqrt(2.0)));
}

TEST_CASE("report formats") {
  ScenarioReport r;
  r.scenario = "x";
  r.outputs.push_back({"a", 2.0, "T", 4.0, "note, with comma"});
  r.outputs.push_back({"b", 1.0, "", std::nullopt, ""});
  CHECK(csv(r) == "quantity,unit,computed,paper_value,ratio,note\na,T,2,4,0.5,\"note, with comma\"\nb,,1,,,\n");
  CHECK(r.to_json(-1).find("\"ratio\":0.5") != std::string::npos);
  CHECK_THROWS_AS(r.output("zzz"), DomainError);
}

TEST_CASE("bath JSON round trip") {
  DiscreteBath b;
  b.add({1.5, 0.25, Vec3(0, 1, 0)});
  b.add({3.0, 1e-3, Vec3(1, 0, 0)});
  const DiscreteBath c = bath_from_json(bath_to_json(b));
  REQUIRE(c.size() == 2);
  CHECK(c.modes[1].omega == 3.0);
  CHECK(c.modes[0].n_hat.y() == 1.0);
  CHECK_THROWS_AS(bath_from_json("{\"modes\": [{\"omega\": -1, \"beta\": 1}]}"), DomainError);
  CHECK_THROWS_AS(bath_from_json("{oops"), DomainError);
  CHECK_THROWS_AS(bath_from_json("{\"modes\": [{\"beta\": 1}]}"), DomainError);
}

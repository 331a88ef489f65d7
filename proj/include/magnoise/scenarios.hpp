#pragma once

#include <string>
#include <vector>

#include "magnoise/io.hpp"
#include "magnoise/spectra.hpp"
#include "magnoise/units.hpp"

namespace magnoise {

struct ScenarioInput {
  std::string key;
  std::string text;  // as written, e.g. "1cm"
  Dimension dim = Dimension::dimensionless;
  std::string description;
};

class ScenarioInputs {
 public:
  ScenarioInputs(std::string scenario, std::vector<ScenarioInput> defaults);

  // Unknown keys and unparseable values throw (ConfigError / UnitError).
  void set(const std::string& key, const std::string& text);
  void apply(const std::vector<ConfigEntry>& config, const std::string& source = "<config>");

  double si(const std::string& key) const;
  int integer(const std::string& key) const;
  const std::string& scenario() const { return scenario_; }
  const std::vector<ScenarioInput>& entries() const { return entries_; }
  bool is_default(const std::string& key) const;

 private:
  const ScenarioInput& find(const std::string& key) const;
  std::string scenario_;
  std::vector<ScenarioInput> entries_;
  std::vector<std::string> defaults_;
};

std::vector<std::string> scenario_names();
ScenarioInputs scenario_defaults(const std::string& name);

// Noise reports use `conv` for every spectral density; quoted reference values are one-sided.
ScenarioReport scenario_atom_trap(const ScenarioInputs& in, Convention conv = Convention::one_sided);
ScenarioReport scenario_mrfm(const ScenarioInputs& in, Convention conv = Convention::one_sided);
ScenarioReport scenario_kane(const ScenarioInputs& in, Convention conv = Convention::one_sided);
ScenarioReport run_scenario(const ScenarioInputs& in, Convention conv = Convention::one_sided);

// Number of strict interior local maxima of a sampled curve.
int count_local_maxima(const std::vector<double>& y);

}  // namespace magnoise

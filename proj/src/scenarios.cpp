#include "magnoise/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "magnoise/gamma.hpp"
#include "magnoise/relaxation.hpp"

namespace magnoise {

using constants::hbar;
using constants::k_B;
using constants::mu_0;
using constants::pi;

ScenarioInputs::ScenarioInputs(std::string scenario, std::vector<ScenarioInput> defaults)
    : scenario_(std::move(scenario)), entries_(std::move(defaults)) {
  for (const auto& e : entries_) {
    parse_quantity(e.text, e.dim);
    defaults_.push_back(e.text);
  }
}

const ScenarioInput& ScenarioInputs::find(const std::string& key) const {
  for (const auto& e : entries_)
    if (e.key == key) return e;
  throw ConfigError(scenario_, 0, key, "unknown parameter");
}

void ScenarioInputs::set(const std::string& key, const std::string& text) {
  for (auto& e : entries_)
    if (e.key == key) {
      parse_quantity(text, e.dim);
      e.text = text;
      return;
    }
  throw ConfigError(scenario_, 0, key, "unknown parameter");
}

void ScenarioInputs::apply(const std::vector<ConfigEntry>& config, const std::string& source) {
  for (const auto& c : config) {
    try {
      set(c.key, c.value);
    } catch (const ConfigError&) {
      throw ConfigError(source, c.line, c.key, "unknown parameter for scenario " + scenario_);
    } catch (const UnitError& e) {
      throw ConfigError(source, c.line, c.key, e.what());
    }
  }
}

double ScenarioInputs::si(const std::string& key) const {
  const auto& e = find(key);
  return parse_quantity(e.text, e.dim).si();
}

int ScenarioInputs::integer(const std::string& key) const {
  const double v = si(key);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(scenario_, 0, key, "expected an integer");
  return static_cast<int>(v);
}

bool ScenarioInputs::is_default(const std::string& key) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].key == key) return entries_[i].text == defaults_[i];
  return false;
}

std::vector<std::string> scenario_names() { return {"atom-trap", "mrfm", "kane"}; }

ScenarioInputs scenario_defaults(const std::string& name) {
  using D = Dimension;
  if (name == "atom-trap")
    return ScenarioInputs(name, {
        {"separation", "2cm", D::length, "gap between the two slabs (2d)"},
        {"thickness", "1cm", D::length, "slab thickness"},
        {"sigma", "5.9e7", D::dimensionless, "conductivity, S/m"},
        {"temperature", "300K", D::temperature, ""},
        {"gamma_over_2pi", "7.59MHz", D::frequency, "gyromagnetic ratio per tesla"},
        {"efield", "1e6", D::dimensionless, "applied electric field, V/m"},
        {"f_rolloff", "100Hz", D::frequency, "second noise frequency"},
        {"regions", "1", D::dimensionless, "independent averaging regions (divisor on S_d)"},
    });
  if (name == "mrfm")
    return ScenarioInputs(name, {
        {"tip_radius", "1um", D::length, ""},
        {"tip_magnetization", "1T", D::magnetic_field, "mu0 M"},
        {"distance", "50nm", D::length, "spin to slab surface"},
        {"thickness", "50nm", D::length, ""},
        {"temperature", "4K", D::temperature, ""},
        {"theta", "0", D::dimensionless, "polarization axis vs slab normal, rad"},
        {"gamma_e_over_2pi", "28GHz", D::frequency, "electron, per tesla"},
        {"gamma_p_over_2pi", "42.58MHz", D::frequency, "proton, per tesla"},
        {"sigma", "4e6", D::dimensionless, "conductivity, S/m"},
        {"sweep_sigma_min", "1e4", D::dimensionless, ""},
        {"sweep_sigma_max", "1e14", D::dimensionless, ""},
        {"sweep_points", "41", D::dimensionless, ""},
    });
  if (name == "kane")
    return ScenarioInputs(name, {
        {"B0", "2T", D::magnetic_field, ""},
        {"temperature", "100mK", D::temperature, ""},
        {"thickness", "5nm", D::length, "gate pad thickness"},
        {"distance", "10nm", D::length, "donor to pad surface"},
        {"theta", "0", D::dimensionless, "rad"},
        {"hyperfine_over_2pi", "29MHz", D::frequency, "A/(2 pi)"},
        {"gamma_n_over_2pi", "17.25MHz", D::frequency, "31P nucleus, per tesla"},
        {"gamma_e_over_2pi", "28GHz", D::frequency, "electron, per tesla"},
        {"sigma", "1e7", D::dimensionless, "reference pad conductivity, S/m"},
        {"sweep_sigma_min", "1e3", D::dimensionless, ""},
        {"sweep_sigma_max", "1e11", D::dimensionless, ""},
        {"sweep_points", "33", D::dimensionless, ""},
    });
  throw DomainError("unknown scenario '" + name + "'");
}

int count_local_maxima(const std::vector<double>& y) {
  int n = 0;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] > y[i + 1]) ++n;
  return n;
}

namespace {

double sided(Convention c) { return c == Convention::one_sided ? 2.0 : 1.0; }

// One task per sweep point; results come back in input order.
template <class F>
auto parallel_map(const std::vector<double>& xs, F f) {
  using R = decltype(f(xs.front()));
  std::vector<std::future<R>> jobs;
  for (double x : xs) jobs.push_back(std::async(std::launch::async, f, x));
  std::vector<R> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::vector<double> log_sweep(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi > lo) || n < 2) throw DomainError("sweep: need 0 < min < max and >= 2 points");
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return v;
}

ScenarioReport start(const ScenarioInputs& in, Convention conv) {
  ScenarioReport r;
  r.scenario = in.scenario();
  for (const auto& e : in.entries()) r.inputs.emplace_back(e.key, e.text);
  r.inputs.emplace_back("convention", to_string(conv));
  return r;
}

std::string regime_name(double d, double t, double lambda) {
  const auto reg = detect_regime(d, t, lambda);
  return reg ? to_string(*reg) : "transition";
}

void add(ScenarioReport& r, std::string name, double v, std::string unit,
         std::optional<double> paper = std::nullopt, std::string note = {}) {
  r.outputs.push_back({std::move(name), v, std::move(unit), paper, std::move(note)});
}

}  // namespace

ScenarioReport scenario_atom_trap(const ScenarioInputs& in, Convention conv) {
  ScenarioReport r = start(in, conv);
  const double d = 0.5 * in.si("separation"), t = in.si("thickness");
  const double sigma = in.si("sigma"), T = in.si("temperature");
  const double gamma = 2 * pi * in.si("gamma_over_2pi");
  const double E = in.si("efield"), f1 = in.si("f_rolloff");
  const double regions = in.si("regions");
  if (!(regions >= 1)) throw DomainError("regions must be >= 1");
  if (!(f1 > 0)) throw DomainError("f_rolloff must be positive");

  const SlabSystem two(d, t, Vec3::UnitZ(), SlabConfig::two_slab_midpoint);
  const Material cu = Material::conductor(sigma);
  const double w1 = 2 * pi * f1;
  const DissipationKernel g0 = gamma_static(two, cu);
  const DissipationKernel g1 = gamma_two_slab(two, cu, w1);
  const DissipationKernel g1i = gamma_interpolated(SlabSystem(d, t), cu, w1);
  const double c = sided(conv);
  // n.(I + n n).n = 2
  const double S0 = c * 2.0 * g0.gamma * thermal_occupation_kernel(0.0, T);
  const double S1 = c * 2.0 * g1.gamma * thermal_occupation_kernel(w1, T);
  const double S1i = c * 2.0 * 2.0 * g1i.gamma * thermal_occupation_kernel(w1, T);

  const double lambda1 = skin_depth(cu, w1);
  add(r, "gamma_prime_0", g0.gamma, "T^2 s/J");
  add(r, "gamma_prime_rolloff", g1.gamma, "T^2 s/J");
  add(r, "skin_depth_rolloff", lambda1, "m");
  r.notes.push_back("regime at f_rolloff: " + regime_name(d, t, lambda1));
  add(r, "sqrt_Snn_0", std::sqrt(S0) * 1e12, "pT/sqrt(Hz)", 1.2, "one-sided reference value");
  add(r, "sqrt_Snn_rolloff", std::sqrt(S1) * 1e12, "pT/sqrt(Hz)", 0.6,
      "reference value quoted at 100 Hz");
  add(r, "sqrt_Snn_rolloff_interp", std::sqrt(S1i) * 1e12, "pT/sqrt(Hz)", std::nullopt,
      "2 x one-slab interpolation formula");
  // level shift hbar gamma B / 2 read as an electric dipole in field E
  const double Sd = std::pow(hbar * gamma / (2.0 * E), 2) * S0 / regions;
  const double E_sqrtSd = E * std::sqrt(Sd);
  add(r, "E_sqrt_Sd", E_sqrtSd / constants::e_charge, "eV/sqrt(Hz)", 1.94e-20);
  add(r, "sqrt_Sd", std::sqrt(Sd) / constants::e_charge * 100.0, "e cm/sqrt(Hz)");
  return r;
}

ScenarioReport scenario_mrfm(const ScenarioInputs& in, Convention conv) {
  ScenarioReport r = start(in, conv);
  const double rt = in.si("tip_radius"), M = in.si("tip_magnetization");
  const double d = in.si("distance"), t = in.si("thickness");
  const double T = in.si("temperature"), theta = in.si("theta");
  const double ge = 2 * pi * in.si("gamma_e_over_2pi"), gp = 2 * pi * in.si("gamma_p_over_2pi");
  const double sigma = in.si("sigma");

  const double B0 = 2.0 * M * std::pow(rt, 3) / (3.0 * std::pow(rt + d, 3));
  const Vec3 b(std::sin(theta), 0.0, std::cos(theta));
  const SlabSystem slab(d, t);
  const SpinContext ce(ge, B0, b, T), cp(gp, B0, b, T);

  auto rates = [&](double s) {
    const Material m = Material::conductor(s);
    GammaSamples ge_s, gp_s;
    const double g0 = gamma_static(slab, m).gamma;
    ge_s.at_zero = gp_s.at_zero = g0;
    ge_s.at_omega0 = gamma_integral(slab, m, ce.omega0()).gamma;
    gp_s.at_omega0 = gamma_integral(slab, m, cp.omega0()).gamma;
    return std::pair{relaxation_times(ce, ge_s), relaxation_times(cp, gp_s)};
  };

  add(r, "B0", B0, "T", 0.58);
  add(r, "f0_electron", ce.omega0() / (2 * pi) / 1e9, "GHz", 16.1);
  add(r, "f0_proton", cp.omega0() / (2 * pi) / 1e6, "MHz");
  const double lam = skin_depth(Material::conductor(sigma), ce.omega0());
  add(r, "skin_depth_electron", lam, "m");
  r.notes.push_back("regime at the electron frequency: " + regime_name(d, t, lam));
  const auto [re, rp] = rates(sigma);
  add(r, "rate1_electron", re.rate1, "1/s", 10.0, "order-of-magnitude reference");
  add(r, "rate2_electron", re.rate2, "1/s");
  add(r, "rate1_proton", rp.rate1, "1/s");
  add(r, "rate2_proton", rp.rate2, "1/s");
  // spectral density seen by the electron, normal component
  const double g_e = gamma_integral(slab, Material::conductor(sigma), ce.omega0()).gamma;
  const double Sn = sided(conv) * 2.0 * g_e * thermal_occupation_kernel(ce.omega0(), T);
  add(r, "Snn_electron", Sn, "T^2/Hz");

  const auto sig = log_sweep(in.si("sweep_sigma_min"), in.si("sweep_sigma_max"),
                             in.integer("sweep_points"));
  r.sweep.columns = {"sigma_S_per_m", "skin_depth_electron_m", "rate1_electron_per_s",
                     "rate2_electron_per_s", "rate1_proton_per_s", "rate2_proton_per_s"};
  std::vector<double> r1;
  const auto swept = parallel_map(sig, rates);
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const auto& [a, p] = swept[i];
    r.sweep.rows.push_back({sig[i], skin_depth(Material::conductor(sig[i]), ce.omega0()), a.rate1,
                            a.rate2, p.rate1, p.rate2});
    r1.push_back(a.rate1);
  }
  const auto peak = std::max_element(r1.begin(), r1.end()) - r1.begin();
  add(r, "sweep_peak_sigma", sig[peak], "S/m");
  add(r, "sweep_rate1_local_maxima", count_local_maxima(r1), "count");
  r.notes.push_back("electron gyromagnetic ratio 28 GHz/T reproduces the quoted 16.1 GHz");
  return r;
}

ScenarioReport scenario_kane(const ScenarioInputs& in, Convention conv) {
  ScenarioReport r = start(in, conv);
  const double B0 = in.si("B0"), T = in.si("temperature");
  const double t = in.si("thickness"), d = in.si("distance"), theta = in.si("theta");
  const double A = 2 * pi * in.si("hyperfine_over_2pi");
  const double gn = 2 * pi * in.si("gamma_n_over_2pi"), ge = 2 * pi * in.si("gamma_e_over_2pi");
  const double sigma = in.si("sigma");

  const Vec3 b(std::sin(theta), 0.0, std::cos(theta));
  const SlabSystem slab(d, t);
  const HyperfineSystem hf{ge, gn, A, B0};
  const SpinContext cn(gn, B0, b, T), ce(ge, B0, b, T);
  const double wn = gn * B0 + 2.0 * A;  // two lowest levels

  struct Rates {
    RelaxationTimes nuclear, nuclear_bare, electron;
    double amplification;
  };
  auto rates = [&](double s) {
    const Material m = Material::conductor(s);
    DissipationKernel k0 = gamma_static(slab, m);
    DissipationKernel kn = gamma_integral(slab, m, wn);
    const SpectralDensity S0 = lab_spectral_density(k0, 0.0, T);
    const SpectralDensity Sn = lab_spectral_density(kn, wn, T);
    const KaneResult e0 = kane_effective_density(hf, S0, b);
    const KaneResult en = kane_effective_density(hf, Sn, b);
    Rates out;
    out.nuclear = relaxation_times_covariant(cn, e0.S_eff, en.S_eff);
    out.nuclear_bare = relaxation_times_covariant(cn, S0, Sn);
    GammaSamples g;
    g.at_zero = k0.gamma;
    g.at_omega0 = gamma_integral(slab, m, ce.omega0()).gamma;
    out.electron = relaxation_times(ce, g);
    out.amplification = en.amplification;
    return out;
  };

  const Rates ref = rates(sigma);
  add(r, "amplification", ref.amplification, "", 7.2);
  add(r, "f0_nuclear", wn / (2 * pi) / 1e6, "MHz", std::nullopt, "gamma_n B0 + 2A");
  add(r, "f0_electron", ce.omega0() / (2 * pi) / 1e9, "GHz");
  add(r, "skin_depth_nuclear", skin_depth(Material::conductor(sigma), wn), "m");
  add(r, "skin_depth_electron", skin_depth(Material::conductor(sigma), ce.omega0()), "m");
  add(r, "rate1_nuclear", ref.nuclear.rate1, "1/s");
  add(r, "rate2_nuclear", ref.nuclear.rate2, "1/s");
  add(r, "rate1_nuclear_without_hyperfine", ref.nuclear_bare.rate1, "1/s");
  add(r, "rate1_electron", ref.electron.rate1, "1/s");
  add(r, "rate2_electron", ref.electron.rate2, "1/s");

  const auto sig = log_sweep(in.si("sweep_sigma_min"), in.si("sweep_sigma_max"),
                             in.integer("sweep_points"));
  r.sweep.columns = {"sigma_S_per_m", "rate1_nuclear_per_s", "rate2_nuclear_per_s",
                     "rate1_electron_per_s", "rate2_electron_per_s"};
  const auto swept = parallel_map(sig, rates);
  for (std::size_t i = 0; i < sig.size(); ++i) {
    const Rates& x = swept[i];
    r.sweep.rows.push_back({sig[i], x.nuclear.rate1, x.nuclear.rate2, x.electron.rate1, x.electron.rate2});
  }
  return r;
}

ScenarioReport run_scenario(const ScenarioInputs& in, Convention conv) {
  if (in.scenario() == "atom-trap") return scenario_atom_trap(in, conv);
  if (in.scenario() == "mrfm") return scenario_mrfm(in, conv);
  if (in.scenario() == "kane") return scenario_kane(in, conv);
  throw DomainError("unknown scenario '" + in.scenario() + "'");
}

}  // namespace magnoise

// magnoise command-line tool: thin wrappers over the library with CSV/JSON output.
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "magnoise/bath.hpp"
#include "magnoise/entanglement.hpp"
#include "magnoise/fields.hpp"
#include "magnoise/gamma.hpp"
#include "magnoise/io.hpp"
#include "magnoise/relaxation.hpp"
#include "magnoise/scenarios.hpp"
#include "magnoise/spectra.hpp"
#include "magnoise/units.hpp"

using namespace magnoise;
using nlohmann::json;

namespace {

constexpr int kUsage = 2;
constexpr int kNumerical = 3;

struct Globals {
  std::string format = "csv";
  std::string convention = "one-sided";
  std::string config;

  Convention conv() const {
    return convention == "two-sided" ? Convention::two_sided : Convention::one_sided;
  }
  bool json() const { return format == "json"; }
};

double q(const std::string& text, Dimension dim) { return parse_quantity(text, dim).si(); }

struct SlabArgs {
  std::string d = "1cm", t = "1cm", sigma = "5.9e7", phi = "0", mu_r = "1", mu_r_imag = "0";
  std::string london;
  bool two_slab = false;

  void add(CLI::App* app) {
    app->add_option("--d", d, "distance to the slab surface (length units)");
    app->add_option("--t", t, "slab thickness");
    app->add_option("--sigma", sigma, "|sigma|, S/m");
    app->add_option("--phi", phi, "conductivity phase, rad (sigma = |sigma| e^{-i phi})");
    app->add_option("--mu-r", mu_r, "Re(mu)/mu0");
    app->add_option("--mu-r-imag", mu_r_imag, "Im(mu)/mu0");
    app->add_option("--london", london, "London penetration depth (superconductor)");
    app->add_flag("--two-slab", two_slab, "field point midway between two slabs at distance d");
  }
  SlabSystem slab() const {
    return SlabSystem(q(d, Dimension::length), q(t, Dimension::length), Vec3::UnitZ(),
                      two_slab ? SlabConfig::two_slab_midpoint : SlabConfig::one_slab);
  }
  Material material() const {
    const cplx mu = constants::mu_0 * cplx(q(mu_r, Dimension::dimensionless),
                                           q(mu_r_imag, Dimension::dimensionless));
    if (!london.empty()) return Material::london(q(london, Dimension::length), mu);
    const double s = q(sigma, Dimension::dimensionless), p = q(phi, Dimension::dimensionless);
    return Material::conductor(std::polar(s, -p), mu);
  }
};

std::vector<double> frequency_list(const std::string& f, const std::string& fmax, int points) {
  const double f0 = q(f, Dimension::frequency);
  if (fmax.empty()) return {f0};
  const double f1 = q(fmax, Dimension::frequency);
  if (!(f0 > 0) || !(f1 > f0) || points < 2)
    throw DomainError("frequency sweep needs 0 < f < f-max and --points >= 2");
  std::vector<double> v;
  for (int i = 0; i < points; ++i) v.push_back(f0 * std::pow(f1 / f0, double(i) / (points - 1)));
  return v;
}

DissipationKernel compute_gamma(const SlabArgs& a, double omega, const std::string& method) {
  const SlabSystem s = a.slab();
  const Material m = a.material();
  if (method == "auto" || method == "quadrature") return gamma_auto(s, m, omega);
  if (method == "interpolated") {
    DissipationKernel k = gamma_interpolated(SlabSystem(s.d, s.t), m, omega);
    if (a.two_slab) {
      k.gamma *= 2.0;
      k.warnings.push_back("two-slab value taken as 2 x one-slab interpolation");
    }
    return k;
  }
  if (method == "asymptotic") return gamma_asymptotic(s, m, omega);
  throw DomainError("unknown method '" + method + "'");
}

json matrix_json(const Mat3& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) rows.push_back({m(i, 0), m(i, 1), m(i, 2)});
  return rows;
}

// Fill options not given on the command line from the config file.
void apply_config(CLI::App* sub, const std::string& path) {
  if (path.empty()) return;
  for (const auto& e : load_config(path)) {
    CLI::Option* opt = sub->get_option_no_throw("--" + e.key);
    if (!opt) throw ConfigError(path, e.line, e.key, "not an option of '" + sub->get_name() + "'");
    if (opt->count() > 0) continue;
    opt->add_result(e.value);
    opt->run_callback();
  }
}

void print_warnings(const std::vector<std::string>& w) {
  for (const auto& s : w) std::cerr << "warning: " << s << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal magnetic noise, spin relaxation and entanglement near conducting slabs"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--convention", g.convention, "spectral density convention")
      ->check(CLI::IsMember({"one-sided", "two-sided"}));
  app.add_option("--config", g.config, "flat key = value file; command-line flags win");

  // gamma
  auto* gamma_cmd = app.add_subcommand("gamma", "dissipation coefficient Gamma(omega)");
  SlabArgs ga;
  std::string g_f = "0", g_fmax, g_method = "auto";
  int g_points = 21;
  ga.add(gamma_cmd);
  gamma_cmd->add_option("--f", g_f, "frequency (Hz units); 0 gives the static limit");
  gamma_cmd->add_option("--f-max", g_fmax, "upper end of a log frequency sweep");
  gamma_cmd->add_option("--points", g_points, "sweep points");
  gamma_cmd->add_option("--method", g_method, "auto|quadrature|asymptotic|interpolated")
      ->check(CLI::IsMember({"auto", "quadrature", "asymptotic", "interpolated"}));

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "lab-frame noise spectral density");
  SlabArgs sa;
  std::string s_f = "0", s_fmax, s_T = "300K";
  int s_points = 21;
  sa.add(spec_cmd);
  spec_cmd->add_option("--f", s_f, "frequency");
  spec_cmd->add_option("--f-max", s_fmax, "upper end of a log frequency sweep");
  spec_cmd->add_option("--points", s_points, "sweep points");
  spec_cmd->add_option("--temperature", s_T, "temperature (K, mK)");

  // relax
  auto* relax_cmd = app.add_subcommand("relax", "T1, T2, T1rho and Bloch trajectories");
  SlabArgs ra;
  std::string r_gamma = "28GHz", r_B0 = "0.576T", r_theta = "0", r_T = "4K", r_B1, r_beta = "0";
  std::string r_duration;
  int r_traj = 0;
  ra.add(relax_cmd);
  relax_cmd->add_option("--gamma-over-2pi", r_gamma, "gyromagnetic ratio / 2 pi, per tesla");
  relax_cmd->add_option("--B0", r_B0, "polarizing field (T)");
  relax_cmd->add_option("--theta", r_theta, "angle between polarization and slab normal, rad");
  relax_cmd->add_option("--temperature", r_T, "temperature");
  relax_cmd->add_option("--B1", r_B1, "rf field (T); enables T1rho");
  relax_cmd->add_option("--beta", r_beta, "angle between b and b1, rad");
  relax_cmd->add_option("--trajectory", r_traj, "emit a Bloch trajectory with this many samples");
  relax_cmd->add_option("--duration", r_duration, "trajectory length, s (default 5 T1)");

  // entangle
  auto* ent_cmd = app.add_subcommand("entangle", "zero-temperature entanglement");
  SlabArgs ea;
  bool e_ohmic = false;
  std::string e_q = "1000", e_ratio = "1e6", e_f0 = "16.1GHz", e_gamma = "28GHz", e_theta = "0",
              e_wc;
  ea.add(ent_cmd);
  ent_cmd->add_flag("--ohmic", e_ohmic, "oscillator with Q and omega_c / omega0");
  ent_cmd->add_option("--q", e_q, "quality factor");
  ent_cmd->add_option("--wc-over-w0", e_ratio, "cutoff ratio");
  ent_cmd->add_option("--f0", e_f0, "spin precession frequency");
  ent_cmd->add_option("--gamma-over-2pi", e_gamma, "gyromagnetic ratio / 2 pi, per tesla");
  ent_cmd->add_option("--theta", e_theta, "spin axis vs slab normal, rad");
  ent_cmd->add_option("--fc", e_wc, "cutoff frequency for the logarithmic estimate");

  // fieldmap
  auto* field_cmd = app.add_subcommand("fieldmap", "Region I E and B fields in the x-z plane");
  SlabArgs fa;
  std::string f_f = "1kHz", f_mx = "0", f_my = "0", f_mz = "1";
  std::string f_xmin = "-2cm", f_xmax = "2cm", f_zmin = "-1cm", f_zmax = "0.9cm";
  int f_nx = 9, f_nz = 9;
  bool f_response = false;
  fa.add(field_cmd);
  field_cmd->add_option("--f", f_f, "frequency");
  field_cmd->add_option("--mx", f_mx, "dipole x, A m^2");
  field_cmd->add_option("--my", f_my, "dipole y");
  field_cmd->add_option("--mz", f_mz, "dipole z (slab normal)");
  field_cmd->add_option("--x-min", f_xmin);
  field_cmd->add_option("--x-max", f_xmax);
  field_cmd->add_option("--z-min", f_zmin);
  field_cmd->add_option("--z-max", f_zmax);
  field_cmd->add_option("--nx", f_nx);
  field_cmd->add_option("--nz", f_nz);
  field_cmd->add_flag("--response-only", f_response, "omit the free dipole field");

  // survey
  auto* survey_cmd = app.add_subcommand("survey", "interpolation formula vs quadrature");
  std::string v_preset = "standard";
  bool v_two = false;
  int v_nt = 15, v_nl = 27;
  survey_cmd->add_option("--preset", v_preset, "grid preset")->check(CLI::IsMember({"standard"}));
  survey_cmd->add_flag("--two-slab", v_two, "compare Gamma' with 2 Gamma instead");
  survey_cmd->add_option("--nt", v_nt, "t samples");
  survey_cmd->add_option("--nl", v_nl, "lambda/d samples");

  // bath-oracle
  auto* bath_cmd = app.add_subcommand("bath-oracle", "exact sums for a discrete oscillator bath");
  std::string b_file, b_f0 = "1Hz", b_ratio = "1e6", b_gamma = "28GHz";
  int b_bins = 512;
  bath_cmd->add_option("--bath", b_file, "bath JSON {\"modes\": [{omega, beta, n}]}");
  bath_cmd->add_option("--f0", b_f0, "spin / oscillator frequency");
  bath_cmd->add_option("--bins", b_bins, "flat-kernel discretization bins (no --bath)");
  bath_cmd->add_option("--wc-over-w0", b_ratio, "flat-kernel cutoff ratio (no --bath)");
  bath_cmd->add_option("--gamma-over-2pi", b_gamma, "gyromagnetic ratio / 2 pi (no --bath)");

  // scenario
  auto* scen_cmd = app.add_subcommand("scenario", "worked design scenarios");
  scen_cmd->require_subcommand(1);
  std::map<std::string, ScenarioInputs> scen_inputs;
  std::map<std::string, std::map<std::string, std::string>> scen_values;
  std::map<std::string, CLI::App*> scen_apps;
  bool sc_sweep = false, sc_echo = false;
  for (const auto& name : scenario_names()) {
    ScenarioInputs in = scenario_defaults(name);
    auto* sub = scen_cmd->add_subcommand(name, name + " scenario");
    for (const auto& e : in.entries()) {
      scen_values[name][e.key] = e.text;
      std::string help = e.description.empty() ? std::string(to_string(e.dim)) : e.description;
      sub->add_option("--" + e.key, scen_values[name][e.key], help + " [" + e.text + "]");
    }
    sub->add_flag("--sweep", sc_sweep, "emit the conductivity sweep table");
    sub->add_flag("--echo-config", sc_echo, "print the inputs as a config file and exit");
    scen_apps[name] = sub;
    scen_inputs.emplace(name, std::move(in));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  std::ostream& out = std::cout;
  out.precision(17);
  try {
    if (gamma_cmd->parsed()) {
      apply_config(gamma_cmd, g.config);
      Table tab;
      tab.columns = {"f_Hz", "gamma_T2_s_per_J", "skin_depth_m", "error_estimate", "method", "regime"};
      json arr = json::array();
      const Material m = ga.material();
      for (double f : frequency_list(g_f, g_fmax, g_points)) {
        const double w = 2 * constants::pi * f;
        const DissipationKernel k = compute_gamma(ga, w, g_method);
        print_warnings(k.warnings);
        const double lam = skin_depth(m, w);
        const std::string reg = k.regime ? to_string(*k.regime) : "";
        tab.rows.push_back({f, k.gamma, lam, k.error_estimate});
        tab.text_rows.push_back({to_string(k.method), reg});
        arr.push_back({{"f_Hz", f}, {"gamma", k.gamma}, {"skin_depth_m", std::isfinite(lam) ? json(lam) : json("inf")},
                       {"error_estimate", k.error_estimate}, {"method", to_string(k.method)},
                       {"regime", reg}, {"tensor", matrix_json(k.tensor())}});
      }
      if (g.json()) out << arr.dump(2) << "\n";
      else tab.write_csv(out);
    } else if (spec_cmd->parsed()) {
      apply_config(spec_cmd, g.config);
      const double T = q(s_T, Dimension::temperature);
      Table tab;
      tab.columns = {"f_Hz", "S_nn_T2_per_Hz", "S_tt_T2_per_Hz", "sqrt_S_nn_T_per_sqrtHz"};
      json arr = json::array();
      for (double f : frequency_list(s_f, s_fmax, s_points)) {
        const double w = 2 * constants::pi * f;
        const DissipationKernel k = gamma_auto(sa.slab(), sa.material(), w);
        print_warnings(k.warnings);
        const SpectralDensity S = convention_convert(lab_spectral_density(k, w, T), g.conv());
        const double snn = S.component(Vec3::UnitZ()), stt = S.component(Vec3::UnitX());
        tab.rows.push_back({f, snn, stt, std::sqrt(snn)});
        arr.push_back({{"f_Hz", f}, {"convention", to_string(S.convention)}, {"S", matrix_json(S.S)}});
      }
      if (g.json()) out << arr.dump(2) << "\n";
      else tab.write_csv(out);
    } else if (relax_cmd->parsed()) {
      apply_config(relax_cmd, g.config);
      const double gamma = 2 * constants::pi * q(r_gamma, Dimension::frequency);
      const double theta = q(r_theta, Dimension::dimensionless);
      const Vec3 b(std::sin(theta), 0, std::cos(theta));
      std::optional<RfField> rf;
      if (!r_B1.empty()) {
        const double beta = q(r_beta, Dimension::dimensionless);
        // b1 in the plane of b and x, at angle beta from b
        const Vec3 perp = Vec3(std::cos(theta), 0, -std::sin(theta));
        rf = RfField{q(r_B1, Dimension::magnetic_field), std::cos(beta) * b + std::sin(beta) * perp};
      }
      const SpinContext ctx(gamma, q(r_B0, Dimension::magnetic_field), b,
                            q(r_T, Dimension::temperature), rf);
      const SlabSystem s = ra.slab();
      const Material m = ra.material();
      GammaSamples gs;
      gs.at_zero = gamma_auto(s, m, 0.0).gamma;
      gs.at_omega0 = gamma_auto(s, m, ctx.omega0()).gamma;
      if (rf) gs.at_omega1 = gamma_auto(s, m, ctx.omega1()).gamma;
      const RelaxationTimes rt = relaxation_times(ctx, gs, rf.has_value());
      if (r_traj > 0) {
        const double dur = r_duration.empty() ? 5.0 * rt.t1() : q(r_duration, Dimension::dimensionless);
        BlochState s0;
        s0.s = 0.5 * Vec3(std::cos(theta), 0, -std::sin(theta));
        const auto traj = bloch_integrate(s0, ctx, rt, dur, r_traj);
        Table tab;
        tab.columns = {"t_s", "sx_hbar", "sy_hbar", "sz_hbar"};
        for (const auto& st : traj) tab.rows.push_back({st.time, st.s.x(), st.s.y(), st.s.z()});
        if (g.json()) {
          out << json{{"columns", tab.columns}, {"rows", tab.rows}}.dump(2) << "\n";
        } else {
          tab.write_csv(out);
        }
      } else {
        Table tab;
        tab.columns = {"f0_Hz", "rate1_per_s", "rate2_per_s", "T1_s", "T2_s"};
        std::vector<double> row{ctx.omega0() / (2 * constants::pi), rt.rate1, rt.rate2, rt.t1(), rt.t2()};
        if (rt.rate1rho) {
          tab.columns.push_back("rate1rho_per_s");
          tab.columns.push_back("T1rho_s");
          row.push_back(*rt.rate1rho);
          row.push_back(rt.t1rho());
        }
        tab.rows.push_back(row);
        if (g.json()) {
          json j;
          for (std::size_t i = 0; i < row.size(); ++i) j[tab.columns[i]] = row[i];
          j["gamma_at_zero"] = gs.at_zero;
          j["gamma_at_omega0"] = gs.at_omega0;
          out << j.dump(2) << "\n";
        } else {
          tab.write_csv(out);
        }
      }
    } else if (ent_cmd->parsed()) {
      apply_config(ent_cmd, g.config);
      std::vector<std::pair<std::string, EntanglementResult>> results;
      if (e_ohmic) {
        EntanglementResult r;
        r.method = EntanglementMethod::approximate;
        r.E = ohmic_approx(q(e_q, Dimension::dimensionless), q(e_ratio, Dimension::dimensionless), 1.0);
        results.emplace_back("oscillator-ohmic", r);
      } else {
        const double w0 = 2 * constants::pi * q(e_f0, Dimension::frequency);
        const double gamma = 2 * constants::pi * q(e_gamma, Dimension::frequency);
        const double theta = q(e_theta, Dimension::dimensionless);
        const Vec3 p(std::sin(theta), 0, std::cos(theta));
        const SlabSystem s = ea.slab();
        const Material m = ea.material();
        KernelSpectrum K;
        K.fn = [&](double w) { return gamma_auto(s, m, w).gamma; };
        K.tail_exponent = -0.5;  // thin-skin decay of Gamma at high frequency
        results.emplace_back("spin", spin_entanglement(p, w0, gamma, K, s.n_hat));
        if (!e_wc.empty()) {
          const SpinContext ctx(gamma, w0 / gamma, p, 0.0);
          const double wc = 2 * constants::pi * q(e_wc, Dimension::frequency);
          results.emplace_back("spin-log-estimate",
                               approximate_entanglement(ctx, gamma_auto(s, m, w0).gamma, s.n_hat, wc));
        }
      }
      if (g.json()) {
        json arr = json::array();
        for (const auto& [name, r] : results)
          arr.push_back({{"quantity", name}, {"E", r.E}, {"method", to_string(r.method)},
                         {"error_estimate", r.error_estimate}, {"warnings", r.warnings}});
        out << arr.dump(2) << "\n";
      } else {
        out << "quantity,E,method,error_estimate\n";
        for (const auto& [name, r] : results)
          out << name << "," << format_number(r.E) << "," << to_string(r.method) << ","
              << format_number(r.error_estimate) << "\n";
      }
      for (const auto& [name, r] : results) print_warnings(r.warnings);
    } else if (field_cmd->parsed()) {
      apply_config(field_cmd, g.config);
      const SlabSystem s = fa.slab();
      const Material m = fa.material();
      const double w = 2 * constants::pi * q(f_f, Dimension::frequency);
      const Vec3 dip(q(f_mx, Dimension::dimensionless), q(f_my, Dimension::dimensionless),
                     q(f_mz, Dimension::dimensionless));
      if (f_nx < 1 || f_nz < 1) throw DomainError("need --nx, --nz >= 1");
      const double x0 = q(f_xmin, Dimension::length), x1 = q(f_xmax, Dimension::length);
      const double z0 = q(f_zmin, Dimension::length), z1 = q(f_zmax, Dimension::length);
      FieldOptions fo;
      fo.include_source = !f_response;
      Table tab;
      tab.columns = {"x_m", "y_m", "z_m"};
      for (const char* fld : {"B", "E"})
        for (const char* c : {"x", "y", "z"})
          for (const char* part : {"re", "im"})
            tab.columns.push_back(std::string(fld) + c + "_" + part);
      for (int iz = 0; iz < f_nz; ++iz)
        for (int ix = 0; ix < f_nx; ++ix) {
          const double x = f_nx == 1 ? x0 : x0 + (x1 - x0) * ix / (f_nx - 1);
          const double z = f_nz == 1 ? z0 : z0 + (z1 - z0) * iz / (f_nz - 1);
          const Vec3 pos(x, 0, z);
          if (pos.norm() == 0.0) continue;  // dipole location
          const FieldSample fsm = reconstruct_field(s, m, w, dip, pos, fo);
          std::vector<double> row{x, 0.0, z};
          for (const CVec3* v : {&fsm.B, &fsm.E})
            for (int c = 0; c < 3; ++c) {
              row.push_back((*v)(c).real());
              row.push_back((*v)(c).imag());
            }
          tab.rows.push_back(row);
        }
      if (g.json()) out << json{{"columns", tab.columns}, {"rows", tab.rows}}.dump(2) << "\n";
      else tab.write_csv(out);
    } else if (survey_cmd->parsed()) {
      apply_config(survey_cmd, g.config);
      SurveyGrid grid = SurveyGrid::standard(v_nt, v_nl);
      grid.two_slab = v_two;
      const SurveyReport rep = survey_design_space(grid);
      json summary = {{"preset", v_preset},
                      {"two_slab", v_two},
                      {"points", rep.points.size()},
                      {"failures", rep.failures},
                      {"max_db", rep.max_db},
                      {"min_db", rep.min_db}};
      if (g.json()) {
        json pts = json::array();
        for (const auto& p : rep.points)
          pts.push_back({{"d", p.d}, {"t", p.t}, {"sigma_mag", p.sigma_mag}, {"phi", p.phi},
                         {"omega", p.omega}, {"lambda", p.lambda}, {"gamma_quad", p.gamma_quad},
                         {"gamma_interp", p.gamma_interp}, {"err_db", p.err_db}, {"regime", p.regime}});
        out << json{{"summary", summary}, {"points", pts}}.dump(2) << "\n";
      } else {
        Table tab;
        tab.columns = {"d", "t", "sigma_mag", "phi", "omega", "lambda", "gamma_quad",
                       "gamma_interp", "err_db", "regime"};
        for (const auto& p : rep.points) {
          tab.rows.push_back({p.d, p.t, p.sigma_mag, p.phi, p.omega, p.lambda, p.gamma_quad,
                              p.gamma_interp, p.err_db});
          tab.text_rows.push_back({p.regime});
        }
        tab.write_csv(out);
        std::cerr << summary.dump() << "\n";
      }
      if (rep.failures > 0) return kNumerical;
    } else if (bath_cmd->parsed()) {
      apply_config(bath_cmd, g.config);
      const double w0 = 2 * constants::pi * q(b_f0, Dimension::frequency);
      json j;
      if (!b_file.empty()) {
        std::ifstream f(b_file);
        if (!f) throw DomainError("cannot open " + b_file);
        std::stringstream ss;
        ss << f.rdbuf();
        const DiscreteBath bath = bath_from_json(ss.str());
        const OscillatorSums os = exact_oscillator_sums(bath, w0);
        j = {{"modes", bath.size()},
             {"spin_entanglement_z", exact_entanglement_sum(bath, Vec3::UnitZ(), w0)},
             {"oscillator_entanglement", os.entanglement},
             {"frequency_ratio", os.frequency_ratio},
             {"anisotropy", matrix_json(bath_anisotropy(bath))}};
      } else {
        // flat Gamma on (0, omega_c): closed form against the discretized bath
        const double gamma = 2 * constants::pi * q(b_gamma, Dimension::frequency);
        const double wc = w0 * q(b_ratio, Dimension::dimensionless);
        const double G0 = 1.0 / (gamma * gamma);  // gamma^2 Gamma = 1
        std::vector<double> edges{0.0};
        const double lo = 1e-4 * w0;
        for (int i = 0; i <= b_bins - 1; ++i)
          edges.push_back(lo * std::pow(wc / lo, double(i) / (b_bins - 1)));
        const DiscreteBath bath = sample_bath_from_gamma(
            [&](double w) { return w <= wc ? G0 : 0.0; }, edges, gamma, Vec3::UnitZ(),
            BathTensorForm::slab);
        const Vec3 p = Vec3::UnitX();
        const double exact_sum = exact_entanglement_sum(bath, p, w0);
        const double tf = 3.0 - 0.0;
        const double closed = gamma * gamma * constants::hbar / (4 * constants::pi) * tf * G0 *
                              (std::log((w0 + wc) / w0) - wc / (w0 + wc));
        j = {{"bins", b_bins},
             {"discrete_sum", exact_sum},
             {"closed_form", closed},
             {"relative_difference", (exact_sum - closed) / closed}};
      }
      if (g.json()) {
        out << j.dump(2) << "\n";
      } else {
        out << "quantity,value\n";
        for (auto it = j.begin(); it != j.end(); ++it)
          if (it->is_number()) out << it.key() << "," << format_number(it->get<double>()) << "\n";
      }
    } else if (scen_cmd->parsed()) {
      for (const auto& name : scenario_names()) {
        CLI::App* sub = scen_apps[name];
        if (!sub->parsed()) continue;
        ScenarioInputs& in = scen_inputs.at(name);
        if (!g.config.empty()) {
          const auto cfg = load_config(g.config);
          for (const auto& e : cfg) {
            CLI::Option* opt = sub->get_option_no_throw("--" + e.key);
            if (!opt || e.key == "sweep" || e.key == "echo-config")
              throw ConfigError(g.config, e.line, e.key, "unknown parameter for scenario " + name);
            if (opt->count() == 0) {
              try {
                in.set(e.key, e.value);
              } catch (const UnitError& err) {
                throw ConfigError(g.config, e.line, e.key, err.what());
              }
            }
          }
        }
        for (const auto& e : in.entries()) {
          CLI::Option* opt = sub->get_option("--" + e.key);
          if (opt->count() > 0) in.set(e.key, scen_values[name][e.key]);
        }
        if (sc_echo) {
          ScenarioReport r;
          r.scenario = name;
          for (const auto& e : in.entries()) r.inputs.emplace_back(e.key, e.text);
          out << r.inputs_as_config();
          return 0;
        }
        const ScenarioReport rep = run_scenario(in, g.conv());
        if (g.json()) {
          out << rep.to_json() << "\n";
        } else if (sc_sweep) {
          rep.sweep.write_csv(out);
        } else {
          rep.write_csv(out);
          for (const auto& n : rep.notes) std::cerr << "note: " << n << "\n";
        }
      }
    }
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return 0;
}

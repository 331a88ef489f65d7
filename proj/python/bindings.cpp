#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "magnoise/entanglement.hpp"
#include "magnoise/fields.hpp"
#include "magnoise/gamma.hpp"
#include "magnoise/relaxation.hpp"
#include "magnoise/scenarios.hpp"
#include "magnoise/spectra.hpp"
#include "magnoise/units.hpp"

namespace py = pybind11;
using namespace magnoise;

namespace {

Dimension dimension_from(const std::string& s) {
  if (s == "length") return Dimension::length;
  if (s == "frequency") return Dimension::frequency;
  if (s == "temperature") return Dimension::temperature;
  if (s == "magnetic_field") return Dimension::magnetic_field;
  if (s == "dimensionless") return Dimension::dimensionless;
  throw DomainError("unknown dimension '" + s + "'");
}

py::dict report_dict(const ScenarioReport& r) {
  py::dict out;
  out["scenario"] = r.scenario;
  py::dict inputs;
  for (const auto& [k, v] : r.inputs) inputs[py::str(k)] = v;
  out["inputs"] = inputs;
  py::list outputs;
  for (const auto& o : r.outputs) {
    py::dict e;
    e["quantity"] = o.name;
    e["unit"] = o.unit;
    e["computed"] = o.computed;
    e["paper_value"] = o.paper_value ? py::cast(*o.paper_value) : py::none();
    const auto ratio = o.ratio();
    e["ratio"] = ratio ? py::cast(*ratio) : py::none();
    e["note"] = o.note;
    outputs.append(e);
  }
  out["outputs"] = outputs;
  out["notes"] = r.notes;
  py::dict sweep;
  sweep["columns"] = r.sweep.columns;
  sweep["rows"] = r.sweep.rows;
  out["sweep"] = sweep;
  return out;
}

}  // namespace

PYBIND11_MODULE(_magnoise, mod) {
  mod.doc() = "magnoise C++ core";

  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(mod, "ConvergenceError", PyExc_RuntimeError);

  py::class_<Material>(mod, "Material")
      .def_static("conductor", &Material::conductor, py::arg("sigma"), py::arg("mu") = cplx(constants::mu_0))
      .def_static("london", &Material::london, py::arg("penetration_depth"), py::arg("mu") = cplx(constants::mu_0))
      .def("sigma", &Material::sigma, py::arg("omega"))
      .def("mu", &Material::mu, py::arg("omega"))
      .def("phi", &Material::phi, py::arg("omega"))
      .def_property_readonly("is_london", &Material::is_london);

  py::enum_<SlabConfig>(mod, "SlabConfig")
      .value("one_slab", SlabConfig::one_slab)
      .value("two_slab_midpoint", SlabConfig::two_slab_midpoint);

  py::class_<SlabSystem>(mod, "SlabSystem")
      .def(py::init<double, double, Vec3, SlabConfig>(), py::arg("d"), py::arg("t"),
           py::arg("n_hat") = Vec3(Vec3::UnitZ()), py::arg("config") = SlabConfig::one_slab)
      .def_readonly("d", &SlabSystem::d)
      .def_readonly("t", &SlabSystem::t)
      .def_readonly("n_hat", &SlabSystem::n_hat)
      .def_readonly("config", &SlabSystem::config);

  py::enum_<GammaMethod>(mod, "GammaMethod")
      .value("quadrature", GammaMethod::quadrature)
      .value("static_limit", GammaMethod::static_limit)
      .value("asymptotic", GammaMethod::asymptotic)
      .value("interpolated", GammaMethod::interpolated)
      .value("bath", GammaMethod::bath);
  py::enum_<AsymptoticRegime>(mod, "AsymptoticRegime")
      .value("quasi_static", AsymptoticRegime::quasi_static)
      .value("thin_skin", AsymptoticRegime::thin_skin)
      .value("thin_slab", AsymptoticRegime::thin_slab);

  py::class_<DissipationKernel>(mod, "DissipationKernel")
      .def_readonly("gamma", &DissipationKernel::gamma)
      .def_readonly("method", &DissipationKernel::method)
      .def_readonly("regime", &DissipationKernel::regime)
      .def_readonly("n_hat", &DissipationKernel::n_hat)
      .def_readonly("error_estimate", &DissipationKernel::error_estimate)
      .def_readonly("warnings", &DissipationKernel::warnings)
      .def("tensor", &DissipationKernel::tensor);

  auto quad_default = QuadratureConfig{};
  mod.def("gamma_integral",
          [=](const SlabSystem& s, const Material& m, double w, double rel_tol) {
            QuadratureConfig c = quad_default;
            c.rel_tol = rel_tol;
            return gamma_integral(s, m, w, c);
          },
          py::arg("slab"), py::arg("material"), py::arg("omega"), py::arg("rel_tol") = quad_default.rel_tol);
  mod.def("gamma_two_slab", [](const SlabSystem& s, const Material& m, double w) { return gamma_two_slab(s, m, w); },
          py::arg("slab"), py::arg("material"), py::arg("omega"));
  mod.def("gamma_static", [](const SlabSystem& s, const Material& m) { return gamma_static(s, m); },
          py::arg("slab"), py::arg("material"));
  mod.def("gamma_auto", [](const SlabSystem& s, const Material& m, double w) { return gamma_auto(s, m, w); },
          py::arg("slab"), py::arg("material"), py::arg("omega"));
  mod.def("gamma_asymptotic", &gamma_asymptotic, py::arg("slab"), py::arg("material"), py::arg("omega"),
          py::arg("regime") = std::nullopt, py::arg("margin") = 10.0);
  mod.def("gamma_interpolated", &gamma_interpolated, py::arg("slab"), py::arg("material"), py::arg("omega"));
  mod.def("skin_depth", &skin_depth, py::arg("material"), py::arg("omega"));
  mod.def("thermal_occupation_kernel", &thermal_occupation_kernel, py::arg("omega"), py::arg("temperature"));

  mod.def("survey",
          [](bool two_slab, int nt, int nl) {
            SurveyGrid g = SurveyGrid::standard(nt, nl);
            g.two_slab = two_slab;
            const SurveyReport r = survey_design_space(g);
            py::dict out;
            out["min_db"] = r.min_db;
            out["max_db"] = r.max_db;
            out["failures"] = r.failures;
            std::vector<double> db;
            for (const auto& p : r.points) db.push_back(p.err_db);
            out["err_db"] = db;
            return out;
          },
          py::arg("two_slab") = false, py::arg("nt") = 15, py::arg("nl") = 27);

  py::enum_<Convention>(mod, "Convention")
      .value("two_sided", Convention::two_sided)
      .value("one_sided", Convention::one_sided);
  py::class_<SpectralDensity>(mod, "SpectralDensity")
      .def_readonly("S", &SpectralDensity::S)
      .def_readonly("convention", &SpectralDensity::convention)
      .def_readonly("omega", &SpectralDensity::omega)
      .def("component", &SpectralDensity::component);
  mod.def("lab_spectral_density", &lab_spectral_density, py::arg("kernel"), py::arg("omega"), py::arg("temperature"));
  mod.def("convention_convert", &convention_convert, py::arg("density"), py::arg("target"));

  py::class_<SpinContext>(mod, "SpinContext")
      .def(py::init([](double gamma, double B0, Vec3 b, double T) { return SpinContext(gamma, B0, b, T); }),
           py::arg("gamma"), py::arg("B0"), py::arg("b_hat"), py::arg("temperature"))
      .def("omega0", &SpinContext::omega0);
  py::class_<RelaxationTimes>(mod, "RelaxationTimes")
      .def_readonly("rate1", &RelaxationTimes::rate1)
      .def_readonly("rate2", &RelaxationTimes::rate2)
      .def("t1", &RelaxationTimes::t1)
      .def("t2", &RelaxationTimes::t2);
  mod.def("relaxation_times",
          [](const SpinContext& ctx, double g_zero, double g_omega0, Vec3 n) {
            GammaSamples g;
            g.at_zero = g_zero;
            g.at_omega0 = g_omega0;
            g.n_hat = n;
            return relaxation_times(ctx, g);
          },
          py::arg("ctx"), py::arg("gamma_at_zero"), py::arg("gamma_at_omega0"), py::arg("n_hat") = Vec3(Vec3::UnitZ()));
  mod.def("kane_amplification",
          [](double gamma_e, double gamma_n, double A, double B0) {
            SpectralDensity S;
            S.S = Vec3(1.0, 1.0, 2.0).asDiagonal();
            return kane_effective_density(HyperfineSystem{gamma_e, gamma_n, A, B0}, S, Vec3::UnitZ()).amplification;
          },
          py::arg("gamma_e"), py::arg("gamma_n"), py::arg("A"), py::arg("B0"));

  mod.def("ohmic_approx", &ohmic_approx, py::arg("Q"), py::arg("omega_c"), py::arg("omega0"));
  mod.def("approximate_entanglement",
          [](double w0, double t1, double wc) { return approximate_entanglement(w0, t1, wc).E; },
          py::arg("omega0"), py::arg("t1"), py::arg("omega_c"));
  mod.def("spin_entanglement_flat",
          [](Vec3 p, double w0, double gamma, double G, double wc, Vec3 n) {
            KernelSpectrum K;
            K.fn = [=](double w) { return w <= wc ? G : 0.0; };
            K.cutoff = wc;
            return spin_entanglement(p, w0, gamma, K, n).E;
          },
          py::arg("p_hat"), py::arg("omega0"), py::arg("gamma"), py::arg("gamma_value"), py::arg("omega_c"),
          py::arg("n_hat") = Vec3(Vec3::UnitZ()));
  mod.def("kramers_kronig", &kramers_kronig, py::arg("grid"), py::arg("re_values"), py::arg("omega"));

  mod.def("dissipated_power",
          [](const SlabSystem& s, const Material& m, double w, Vec3 dip) {
            const DissipatedPower p = dissipated_power(s, m, w, dip);
            return py::make_tuple(p.power, p.gamma);
          },
          py::arg("slab"), py::arg("material"), py::arg("omega"), py::arg("dipole"));
  mod.def("reconstruct_field",
          [](const SlabSystem& s, const Material& m, double w, Vec3 dip, Vec3 x, bool include_source) {
            FieldOptions o;
            o.include_source = include_source;
            const FieldSample f = reconstruct_field(s, m, w, dip, x, o);
            return py::make_tuple(f.B, f.E);
          },
          py::arg("slab"), py::arg("material"), py::arg("omega"), py::arg("dipole"), py::arg("position"),
          py::arg("include_source") = true);

  mod.def("parse_quantity",
          [](const std::string& text, const std::string& dim) { return parse_quantity(text, dimension_from(dim)).si(); },
          py::arg("text"), py::arg("dimension"));
  mod.def("scenario_names", &scenario_names);
  mod.def("scenario_defaults",
          [](const std::string& name) {
            py::dict out;
            for (const auto& e : scenario_defaults(name).entries()) out[py::str(e.key)] = e.text;
            return out;
          },
          py::arg("name"));
  mod.def("run_scenario",
          [](const std::string& name, const std::map<std::string, std::string>& overrides, Convention conv) {
            ScenarioInputs in = scenario_defaults(name);
            for (const auto& [k, v] : overrides) in.set(k, v);
            return report_dict(run_scenario(in, conv));
          },
          py::arg("name"), py::arg("overrides") = std::map<std::string, std::string>{},
          py::arg("convention") = Convention::one_sided);
}

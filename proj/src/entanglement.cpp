#include "magnoise/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "magnoise/quadrature.hpp"
#include "magnoise/relaxation.hpp"

namespace magnoise {

const char* to_string(EntanglementMethod m) {
  switch (m) {
    case EntanglementMethod::exact_quadrature: return "exact-quadrature";
    case EntanglementMethod::approximate: return "approximate";
    case EntanglementMethod::discrete_sum: return "discrete-sum";
  }
  return "?";
}

namespace {

void warn_if_large(EntanglementResult& r) {
  if (r.E > 0.1) {
    std::ostringstream os;
    os << "E = " << r.E << " > 0.1: first-order perturbation theory is not reliable";
    r.warnings.push_back(os.str());
  }
}

// p_hat-projected trace factor tr[(I - p p) T] for T = n n or I + n n
double trace_factor(const Vec3& p, const Vec3& n, BathTensorForm form) {
  const double c2 = std::pow(p.dot(n), 2);
  return form == BathTensorForm::slab ? 3.0 - c2 : 1.0 - c2;
}

Mat3 expand(const Vec3& n, BathTensorForm form) {
  const Mat3 nn = n * n.transpose();
  return form == BathTensorForm::slab ? Mat3(Mat3::Identity() + nn) : nn;
}

quad::Result half_line(const std::function<double(double)>& f, double scale,
                       std::optional<double> tail_exponent, std::optional<double> cutoff,
                       const std::vector<double>& breakpoints, double rel_tol,
                       const char* what) {
  quad::HalfLineOptions h;
  h.inner.rel_tol = rel_tol;
  h.scale = scale;
  h.breakpoints = breakpoints;
  if (cutoff) {
    if (!(*cutoff > 0)) throw DomainError(std::string(what) + ": cutoff must be positive");
    h.cutoff = *cutoff;
  } else {
    if (!tail_exponent)
      throw DomainError(std::string(what) + ": kernel needs a tail exponent or a cutoff");
    if (!(*tail_exponent < -1.0)) {
      std::ostringstream os;
      os << what << ": integrand decays as x^" << *tail_exponent << ", integral diverges";
      throw DomainError(os.str());
    }
    h.tail_exponent = *tail_exponent;
  }
  quad::Result r = quad::integrate_half_line(f, h);
  if (!r.converged) {
    std::ostringstream os;
    os << what << ": quadrature did not converge (value " << r.value << ", error " << r.error
       << ", worst interval [" << r.worst_a << ", " << r.worst_b << "])";
    throw ConvergenceError(os.str());
  }
  return r;
}

}  // namespace

StieltjesValue stieltjes_transform(const StieltjesSpec& spec) {
  if (!(spec.order >= 1.0)) throw DomainError("stieltjes: order must be >= 1");
  if (!(spec.shift > 0.0)) throw DomainError("stieltjes: shift must be positive");
  if (!spec.f) throw DomainError("stieltjes: no integrand");
  std::optional<double> tail;
  if (spec.tail_exponent) tail = *spec.tail_exponent - spec.order;
  const double y = spec.shift, rho = spec.order;
  auto g = [&](double x) {
    const double v = spec.f(x);
    return v == 0.0 ? 0.0 : v * std::pow(x + y, -rho);
  };
  const quad::Result r =
      half_line(g, y, tail, spec.cutoff, spec.breakpoints, spec.rel_tol, "stieltjes");
  return {r.value, r.error};
}

EntanglementResult spin_entanglement(const Vec3& p_hat, double omega0, double gamma,
                                     const KernelSpectrum& G, const Vec3& n_hat,
                                     BathTensorForm form, double rel_tol) {
  const Vec3 p = normalized(p_hat, "spin axis");
  const Vec3 n = normalized(n_hat, "slab normal");
  const double tf = trace_factor(p, n, form);
  StieltjesSpec s;
  s.f = [&](double w) { return w * G.fn(w); };
  s.shift = omega0;
  if (G.tail_exponent) s.tail_exponent = *G.tail_exponent + 1.0;
  s.cutoff = G.cutoff;
  s.breakpoints = G.breakpoints;
  s.rel_tol = rel_tol;
  EntanglementResult out;
  const double pre = gamma * gamma * constants::hbar / (4.0 * constants::pi) * tf;
  if (tf == 0.0) return out;
  const StieltjesValue v = stieltjes_transform(s);
  out.E = pre * v.value;
  out.error_estimate = pre * v.error;
  warn_if_large(out);
  return out;
}

EntanglementResult spin_entanglement(const Vec3& p_hat, double omega0, double gamma,
                                     const TensorSpectrum& G, double rel_tol) {
  const Vec3 p = normalized(p_hat, "spin axis");
  const Mat3 Q = Mat3::Identity() - p * p.transpose();
  StieltjesSpec s;
  s.f = [&](double w) { return w * (Q * G.fn(w)).trace(); };
  s.shift = omega0;
  if (G.tail_exponent) s.tail_exponent = *G.tail_exponent + 1.0;
  s.cutoff = G.cutoff;
  s.breakpoints = G.breakpoints;
  s.rel_tol = rel_tol;
  const double pre = gamma * gamma * constants::hbar / (4.0 * constants::pi);
  const StieltjesValue v = stieltjes_transform(s);
  EntanglementResult out;
  out.E = pre * v.value;
  out.error_estimate = pre * v.error;
  warn_if_large(out);
  return out;
}

EntanglementResult spin_entanglement(const Vec3& p_hat, double omega0, const DiscreteBath& bath) {
  if (!(omega0 > 0)) throw DomainError("entanglement: omega0 must be positive");
  EntanglementResult out;
  out.method = EntanglementMethod::discrete_sum;
  out.E = exact_entanglement_sum(bath, p_hat, omega0);
  warn_if_large(out);
  return out;
}

EntanglementResult approximate_entanglement(double omega0, double t1, double omega_c) {
  if (!(omega0 > 0) || !(t1 > 0) || !(omega_c > 0))
    throw DomainError("approximate entanglement: omega0, T1 and omega_c must be positive");
  EntanglementResult out;
  out.method = EntanglementMethod::approximate;
  out.E = std::log(omega_c / omega0) / (2.0 * constants::pi * omega0 * t1);
  if (omega_c < 10.0 * omega0)
    out.warnings.push_back("omega_c/omega0 < 10: logarithmic approximation is poor");
  warn_if_large(out);
  return out;
}

EntanglementResult approximate_entanglement(const SpinContext& ctx, double gamma_at_omega0,
                                            const Vec3& n_hat, double omega_c) {
  SpinContext cold = ctx;
  cold.temperature = 0.0;
  cold.rf.reset();
  GammaSamples g;
  g.at_omega0 = gamma_at_omega0;
  g.n_hat = n_hat;
  const RelaxationTimes r = relaxation_times_expanded(cold, g);
  return approximate_entanglement(cold.omega0(), r.t1(), omega_c);
}

EntanglementResult oscillator_entanglement(const KernelSpectrum& re_mu, double omega0,
                                           double rel_tol) {
  StieltjesSpec s;
  s.f = [&](double w) { return w * re_mu.fn(w); };
  s.shift = omega0;
  if (re_mu.tail_exponent) s.tail_exponent = *re_mu.tail_exponent + 1.0;
  s.cutoff = re_mu.cutoff;
  s.breakpoints = re_mu.breakpoints;
  s.rel_tol = rel_tol;
  const StieltjesValue v = stieltjes_transform(s);
  EntanglementResult out;
  out.E = v.value / (2.0 * constants::pi);
  out.error_estimate = v.error / (2.0 * constants::pi);
  warn_if_large(out);
  return out;
}

EntanglementResult oscillator_entanglement(const DiscreteBath& bath, double omega0) {
  EntanglementResult out;
  out.method = EntanglementMethod::discrete_sum;
  out.E = exact_oscillator_sums(bath, omega0).entanglement;
  warn_if_large(out);
  return out;
}

double ohmic_approx(double Q, double omega_c, double omega0) {
  if (!(Q > 0) || !(omega_c > 0) || !(omega0 > 0))
    throw DomainError("ohmic approximation: Q, omega_c and omega0 must be positive");
  return std::log(omega_c / omega0) / (2.0 * constants::pi * Q);
}

Renormalization oscillator_renormalization(const KernelSpectrum& re_mu, double omega0) {
  if (!(omega0 > 0)) throw DomainError("renormalization: omega0 must be positive");
  const quad::Result r = half_line(re_mu.fn, omega0, re_mu.tail_exponent, re_mu.cutoff,
                                   re_mu.breakpoints, 1e-10, "renormalization");
  Renormalization out;
  const double sq = 1.0 + 2.0 / (constants::pi * omega0) * r.value;
  if (sq <= 0) throw DomainError("renormalization: negative squared frequency");
  out.frequency_ratio = std::sqrt(sq);
  out.error_estimate = r.error / (constants::pi * omega0 * out.frequency_ratio);
  return out;
}

Renormalization spin_renormalization(const TensorSpectrum& re_G) {
  Renormalization out;
  // scale for the panel split: first breakpoint, else 1
  const double scale = re_G.breakpoints.empty() ? 1.0 : re_G.breakpoints.front();
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const quad::Result r =
          half_line([&](double w) { return re_G.fn(w)(i, j); }, scale, re_G.tail_exponent,
                    re_G.cutoff, re_G.breakpoints, 1e-10, "anisotropy tensor");
      out.anisotropy(i, j) = out.anisotropy(j, i) = 2.0 / constants::pi * r.value;
      out.error_estimate = std::max(out.error_estimate, 2.0 / constants::pi * r.error);
    }
  return out;
}

Renormalization spin_renormalization(const KernelSpectrum& re_G, const Vec3& n_hat,
                                     BathTensorForm form) {
  const double scale = re_G.breakpoints.empty() ? 1.0 : re_G.breakpoints.front();
  const quad::Result r = half_line(re_G.fn, scale, re_G.tail_exponent, re_G.cutoff,
                                   re_G.breakpoints, 1e-10, "anisotropy tensor");
  Renormalization out;
  out.anisotropy = 2.0 / constants::pi * r.value * expand(normalized(n_hat, "axis"), form);
  out.error_estimate = 2.0 / constants::pi * r.error;
  return out;
}

Renormalization renormalization(const DiscreteBath& bath, double omega0) {
  Renormalization out;
  out.frequency_ratio = exact_oscillator_sums(bath, omega0).frequency_ratio;
  out.anisotropy = bath_anisotropy(bath);
  return out;
}

namespace {

// Natural cubic spline: second derivatives M at the nodes.
struct Spline {
  const std::vector<double>& x;
  const std::vector<double>& y;
  std::vector<double> M;

  Spline(const std::vector<double>& xs, const std::vector<double>& ys) : x(xs), y(ys) {
    const std::size_t n = x.size();
    M.assign(n, 0.0);
    if (n < 3) return;
    // Thomas algorithm on the interior equations
    std::vector<double> c(n, 0.0), r(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
      const double a = h0 / 6, b = (h0 + h1) / 3, cc = h1 / 6;
      const double rhs = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
      const double denom = b - a * c[i - 1];
      c[i] = cc / denom;
      r[i] = (rhs - a * r[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      M[i] = r[i] - c[i] * M[i + 1];
      if (i == 1) break;
    }
  }

  std::size_t locate(double v) const {
    auto it = std::upper_bound(x.begin(), x.end(), v);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (i == 0) return 0;
    return std::min(i - 1, x.size() - 2);
  }

  double operator()(double v, std::size_t i) const {
    const double h = x[i + 1] - x[i];
    const double A = (x[i + 1] - v) / h, B = (v - x[i]) / h;
    return A * y[i] + B * y[i + 1] +
           ((A * A * A - A) * M[i] + (B * B * B - B) * M[i + 1]) * h * h / 6.0;
  }

  double second(double v, std::size_t i) const {
    const double h = x[i + 1] - x[i];
    return ((x[i + 1] - v) * M[i] + (v - x[i]) * M[i + 1]) / h;
  }
};

constexpr std::array<double, 4> gl_x{0.1834346424956498, 0.5255324099163290,
                                     0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> gl_w{0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};

}  // namespace

double kramers_kronig(const std::vector<double>& grid, const std::vector<double>& re,
                      double omega) {
  const std::size_t n = grid.size();
  if (n != re.size()) throw DomainError("kramers-kronig: grid and values differ in size");
  if (n < 4) throw DomainError("kramers-kronig: need at least 4 samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("kramers-kronig: grid must increase");
  const double a = grid.front(), b = grid.back();
  if (!(omega > a && omega < b)) throw DomainError("kramers-kronig: omega outside the grid");

  double fmax = 0;
  for (double v : re) fmax = std::max(fmax, std::abs(v));
  if (fmax == 0.0) return 0.0;

  const Spline s(grid, re);
  const std::size_t k = s.locate(omega);
  const double f0 = s(omega, k);
  // linear-interpolation error h^2 |f''| / 8 must stay well below the signal
  const double h = grid[k + 1] - grid[k];
  if (h * h * std::abs(s.second(omega, k)) > 1e-2 * fmax) {
    std::ostringstream os;
    os << "kramers-kronig: grid too coarse near omega = " << omega << " (spacing " << h << ")";
    throw DomainError(os.str());
  }

  auto g = [&](double w, std::size_t i) { return (s(w, i) - f0) / (omega - w); };
  auto panel = [&](double lo, double hi, std::size_t i) {
    const double m = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    double acc = 0;
    for (std::size_t j = 0; j < gl_x.size(); ++j)
      acc += gl_w[j] * (g(m - r * gl_x[j], i) + g(m + r * gl_x[j], i));
    return acc * r;
  };
  double total = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (i == k) {
      if (omega > grid[i]) total += panel(grid[i], omega, i);
      if (omega < grid[i + 1]) total += panel(omega, grid[i + 1], i);
    } else {
      total += panel(grid[i], grid[i + 1], i);
    }
  }
  total += f0 * std::log((omega - a) / (b - omega));
  return total / constants::pi;
}

}  // namespace magnoise

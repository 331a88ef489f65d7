#include "magnoise/bath.hpp"

#include <cmath>

#include "magnoise/quadrature.hpp"

namespace magnoise {

DiscreteBath::DiscreteBath(std::vector<Oscillator> m) {
  for (const auto& o : m) add(o);
}

void DiscreteBath::add(const Oscillator& o) {
  if (!(o.omega > 0.0) || !std::isfinite(o.omega))
    throw DomainError("bath: oscillator frequency must be positive");
  if (!std::isfinite(o.beta)) throw DomainError("bath: non-finite coupling");
  Oscillator c = o;
  c.n_hat = normalized(o.n_hat, "bath direction");
  modes.push_back(c);
}

DiscreteBath DiscreteBath::concat(const DiscreteBath& other) const {
  DiscreteBath out = *this;
  out.modes.insert(out.modes.end(), other.modes.begin(), other.modes.end());
  return out;
}

static Mat3 outer(const Vec3& n) { return n * n.transpose(); }

Mat3 memory_kernel(const DiscreteBath& bath, double tau) {
  Mat3 G = Mat3::Zero();
  if (tau < 0.0) return G;
  for (const auto& o : bath.modes)
    G += o.omega * o.beta * o.beta * std::cos(o.omega * tau) * outer(o.n_hat);
  return G;
}

std::vector<SpectralWeight> bath_dissipation_weights(const DiscreteBath& bath) {
  std::vector<SpectralWeight> out;
  for (const auto& o : bath.modes)
    out.push_back({o.omega, 0.5 * constants::pi * o.omega * o.beta * o.beta * outer(o.n_hat)});
  return out;
}

std::vector<SpectralWeight> bath_spectral_weights(const DiscreteBath& bath, double temperature,
                                                  double gamma) {
  if (!(gamma > 0)) throw DomainError("bath: gamma must be positive");
  std::vector<SpectralWeight> out = bath_dissipation_weights(bath);
  for (auto& w : out) w.weight *= thermal_occupation_kernel(w.omega, temperature) / (gamma * gamma);
  return out;
}

Mat3 bath_anisotropy(const DiscreteBath& bath) {
  Mat3 C = Mat3::Zero();
  for (const auto& o : bath.modes) C += o.omega * o.beta * o.beta * outer(o.n_hat);
  return C;
}

double exact_entanglement_sum(const DiscreteBath& bath, const Vec3& p_hat, double omega0,
                              double hbar) {
  const Vec3 p = normalized(p_hat, "spin axis");
  double E = 0;
  for (const auto& o : bath.modes) {
    const double proj = 1.0 - std::pow(p.dot(o.n_hat), 2);  // tr[(I - p p) n n]
    const double w = o.omega;
    E += hbar * w * w * o.beta * o.beta / (8.0 * std::pow(omega0 + w, 2)) * proj;
  }
  return E;
}

OscillatorSums exact_oscillator_sums(const DiscreteBath& bath, double omega0) {
  if (!(omega0 > 0)) throw DomainError("oscillator sums: omega0 must be positive");
  OscillatorSums s;
  for (const auto& o : bath.modes) {
    const double w = o.omega, b2 = o.beta * o.beta;
    s.entanglement += w * w * b2 / (4.0 * std::pow(omega0 + w, 2));
    s.shift_sum += w * b2;
  }
  s.frequency_ratio = std::sqrt(1.0 + s.shift_sum / omega0);
  return s;
}

namespace {

// two unit vectors completing n to an orthonormal frame
std::pair<Vec3, Vec3> transverse_pair(const Vec3& n) {
  Vec3 trial = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  Vec3 e1 = (trial - n * n.dot(trial)).normalized();
  return {e1, n.cross(e1)};
}

}  // namespace

DiscreteBath sample_bath_from_gamma(const std::function<double(double)>& gamma_of_omega,
                                    const std::vector<double>& edges, double gamma,
                                    const Vec3& n_hat, BathTensorForm form) {
  if (!(gamma > 0)) throw DomainError("bath sampling: gamma must be positive");
  if (edges.size() < 2) throw DomainError("bath sampling: need at least one bin");
  const Vec3 n = normalized(n_hat, "bath direction");
  auto g = [&](double w) {
    const double v = gamma_of_omega(w);
    if (v < 0.0) throw DomainError("bath sampling: negative Gamma");
    return v;
  };
  quad::Options opt{1e-12, 0.0, 200};
  DiscreteBath bath;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    if (!(b > a) || a < 0) throw DomainError("bath sampling: edges must increase from >= 0");
    const double W = quad::integrate(g, a, b, opt).value;
    if (W <= 0.0) continue;
    const double M = quad::integrate([&](double w) { return w * g(w); }, a, b, opt).value;
    const double wc = M / W;
    if (!(wc > 0)) continue;
    const double b2 = 2.0 * gamma * gamma * W / (constants::pi * wc);
    if (form == BathTensorForm::along_axis) {
      bath.add({wc, std::sqrt(b2), n});
    } else {
      auto [e1, e2] = transverse_pair(n);
      bath.add({wc, std::sqrt(2.0 * b2), n});
      bath.add({wc, std::sqrt(b2), e1});
      bath.add({wc, std::sqrt(b2), e2});
    }
  }
  return bath;
}

}  // namespace magnoise

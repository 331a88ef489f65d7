#pragma once

#include <functional>
#include <vector>

#include "magnoise/core.hpp"

namespace magnoise {

// One independent oscillator coupled along n_hat. With spins, beta^2 carries
// units of 1/(J s) so that gamma^2 Gamma and (pi/2) omega beta^2 delta(...) match.
struct Oscillator {
  double omega = 0;
  double beta = 0;
  Vec3 n_hat = Vec3::UnitZ();
};

struct DiscreteBath {
  std::vector<Oscillator> modes;

  DiscreteBath() = default;
  explicit DiscreteBath(std::vector<Oscillator> m);
  void add(const Oscillator& o);
  DiscreteBath concat(const DiscreteBath& other) const;
  bool empty() const { return modes.empty(); }
  std::size_t size() const { return modes.size(); }
};

// G(tau) = sum omega_j beta_j^2 cos(omega_j tau) n n for tau > 0, zero otherwise.
// tau = 0 is treated as 0+.
Mat3 memory_kernel(const DiscreteBath& bath, double tau);

struct SpectralWeight {
  double omega;
  Mat3 weight;  // T^2 (delta weight of S_B at omega)
};

// Delta weights of S_B: (pi omega beta^2 / 2 gamma^2) n n hbar omega coth(...)
std::vector<SpectralWeight> bath_spectral_weights(const DiscreteBath& bath, double temperature,
                                                  double gamma);

// Delta weights of Re G~ on omega > 0: (pi/2) omega beta^2 n n
std::vector<SpectralWeight> bath_dissipation_weights(const DiscreteBath& bath);

// sum omega_j beta_j^2 n n
Mat3 bath_anisotropy(const DiscreteBath& bath);

// sum hbar omega_j^2 beta_j^2 / (8 (omega0 + omega_j)^2) tr[(I - p p) n n]
double exact_entanglement_sum(const DiscreteBath& bath, const Vec3& p_hat, double omega0,
                              double hbar = constants::hbar);

struct OscillatorSums {
  double entanglement = 0;     // sum omega_j^2 beta_j^2 / (4 (omega0 + omega_j)^2)
  double frequency_ratio = 1;  // omega0'/omega0 = sqrt(1 + sum omega_j beta_j^2 / omega0)
  double shift_sum = 0;        // sum omega_j beta_j^2
};
OscillatorSums exact_oscillator_sums(const DiscreteBath& bath, double omega0);

enum class BathTensorForm {
  along_axis,  // Gamma n n
  slab,        // Gamma (I + n n), three oscillators per bin
};

// Bins are [edges[i], edges[i+1]]; each contributes oscillators at its
// Gamma-weighted centroid with beta^2 such that Re G~ integrates to gamma^2 Gamma.
DiscreteBath sample_bath_from_gamma(const std::function<double(double)>& gamma_of_omega,
                                    const std::vector<double>& edges, double gamma,
                                    const Vec3& n_hat = Vec3::UnitZ(),
                                    BathTensorForm form = BathTensorForm::along_axis);

}  // namespace magnoise

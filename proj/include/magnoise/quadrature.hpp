#pragma once

#include <functional>
#include <span>
#include <vector>

namespace magnoise::quad {

struct Options {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
};

struct Result {
  double value = 0;
  double error = 0;
  int evaluations = 0;
  int subdivisions = 0;
  bool converged = false;
  // interval with the largest remaining error estimate
  double worst_a = 0, worst_b = 0;
};

using Fn = std::function<double(double)>;

// Globally adaptive 21-point Gauss-Kronrod on [a, b], with optional interior
// breakpoints that seed the initial partition.
Result integrate(const Fn& f, double a, double b, const Options& opt = {},
                 std::span<const double> breakpoints = {});

// Same, but throws ConvergenceError naming the worst subinterval.
double integrate_or_throw(const Fn& f, double a, double b, const Options& opt,
                          std::span<const double> breakpoints = {},
                          const char* what = "integral");

// Integral over [0, inf) split at `scale` with geometric panels beyond.
// `tail_exponent` p: f ~ x^p at large x (must be < -1). The remaining tail past
// the last panel is extrapolated from p.
struct HalfLineOptions {
  Options inner;
  double scale = 1.0;
  double tail_exponent = -2.0;
  double cutoff = 0.0;  // > 0 : hard upper limit instead of infinity
  double panel_ratio = 4.0;
  int max_panels = 400;
  std::vector<double> breakpoints;  // passed to whichever panel contains them
};
Result integrate_half_line(const Fn& f, const HalfLineOptions& opt);

// Wynn epsilon extrapolation of a sequence of partial sums.
class WynnEpsilon {
 public:
  void push(double partial_sum);
  double estimate() const { return estimate_; }
  double error() const { return error_; }
  std::size_t size() const { return count_; }

 private:
  std::vector<double> table_;
  std::size_t count_ = 0;
  double estimate_ = 0;
  double error_ = 0;
  double last_ = 0;
};

}  // namespace magnoise::quad

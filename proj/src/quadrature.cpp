#include "magnoise/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "magnoise/core.hpp"

namespace magnoise::quad {

namespace {

// Kronrod 21-point abscissae (positive half) and weights, Gauss 10-point
// weights for the odd-indexed abscissae.
constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600674445782, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk21(const Fn& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double f1[10], f2[10];
  const double fc = f(c);
  double rk = fc * wgk[10];
  double rg = 0.0, rabs = std::abs(rk);
  for (int j = 0; j < 10; ++j) {
    const double x = h * xgk[j];
    f1[j] = f(c - x);
    f2[j] = f(c + x);
    rk += wgk[j] * (f1[j] + f2[j]);
    rabs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) rg += wg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * rk;
  double rasc = wgk[10] * std::abs(fc - mean);
  for (int j = 0; j < 10; ++j) rasc += wgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  const double ah = std::abs(h);
  rasc *= ah;
  rabs *= ah;
  double err = std::abs((rk - rg) * h);
  if (rasc != 0.0 && err != 0.0) err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (rabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * rabs, err);
  return {a, b, rk * h, err};
}

}  // namespace

Result integrate(const Fn& f, double a, double b, const Options& opt,
                 std::span<const double> breakpoints) {
  Result r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  double sign = 1.0;
  if (b < a) {
    std::swap(a, b);
    sign = -1.0;
  }
  std::vector<double> edges{a};
  for (double p : breakpoints)
    if (p > a && p < b) edges.push_back(p);
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Segment> heap;
  double total = 0, err = 0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Segment s = gk21(f, edges[i], edges[i + 1]);
    r.evaluations += 21;
    total += s.value;
    err += s.error;
    heap.push(s);
  }
  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  int splits = 0;
  while (err > target() && splits < opt.max_subdivisions) {
    Segment s = heap.top();
    const double mid = 0.5 * (s.a + s.b);
    if (!(mid > s.a && mid < s.b) ||
        (s.b - s.a) < 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(s.a), std::abs(s.b)))
      break;  // cannot bisect further
    heap.pop();
    Segment l = gk21(f, s.a, mid), rr = gk21(f, mid, s.b);
    r.evaluations += 42;
    total += l.value + rr.value - s.value;
    err += l.error + rr.error - s.error;
    heap.push(l);
    heap.push(rr);
    ++splits;
    if (!std::isfinite(total)) break;
  }
  // recompute sums to remove drift from incremental updates
  total = 0;
  err = 0;
  double worst = -1;
  std::vector<Segment> all;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const auto& s : all) {
    total += s.value;
    err += s.error;
    if (s.error > worst) {
      worst = s.error;
      r.worst_a = s.a;
      r.worst_b = s.b;
    }
  }
  r.value = sign * total;
  r.error = err;
  r.subdivisions = splits;
  r.converged = std::isfinite(total) && err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  return r;
}

double integrate_or_throw(const Fn& f, double a, double b, const Options& opt,
                          std::span<const double> breakpoints, const char* what) {
  Result r = integrate(f, a, b, opt, breakpoints);
  if (!r.converged) {
    std::ostringstream os;
    os << what << ": no convergence after " << r.subdivisions << " subdivisions (value "
       << r.value << ", error " << r.error << ", worst interval [" << r.worst_a << ", "
       << r.worst_b << "])";
    throw ConvergenceError(os.str());
  }
  return r.value;
}

Result integrate_half_line(const Fn& f, const HalfLineOptions& opt) {
  if (!(opt.scale > 0)) throw DomainError("half-line integral: scale must be positive");
  const bool hard = opt.cutoff > 0;
  if (!hard && !(opt.tail_exponent < -1.0))
    throw DomainError("half-line integral: tail exponent >= -1 diverges");
  Result out;
  const double first_end = hard ? std::min(opt.scale, opt.cutoff) : opt.scale;
  Options inner = opt.inner;
  inner.abs_tol = std::max(inner.abs_tol, 0.0);
  auto inside = [&](double a, double b) {
    std::vector<double> pts;
    for (double x : opt.breakpoints)
      if (x > a && x < b) pts.push_back(x);
    return pts;
  };
  std::vector<double> pts = inside(0.0, first_end);
  Result r = integrate(f, 0.0, first_end, inner, pts);
  out = r;
  if (hard && first_end >= opt.cutoff) return out;

  double a = first_end;
  double last_panel = 0;
  for (int i = 0; i < opt.max_panels; ++i) {
    double b = a * opt.panel_ratio;
    if (hard) b = std::min(b, opt.cutoff);
    pts = inside(a, b);
    Result p = integrate(f, a, b, inner, pts);
    out.value += p.value;
    out.error += p.error;
    out.evaluations += p.evaluations;
    out.subdivisions += p.subdivisions;
    out.converged = out.converged && p.converged;
    if (!p.converged && p.error > 0) {
      out.worst_a = p.worst_a;
      out.worst_b = p.worst_b;
    }
    last_panel = p.value;
    a = b;
    if (hard) {
      if (b >= opt.cutoff) return out;
      continue;
    }
    if (i >= 3 && std::abs(p.value) <= 0.01 * opt.inner.rel_tol * std::abs(out.value)) {
      const double rr = std::pow(opt.panel_ratio, opt.tail_exponent + 1.0);
      const double tail = last_panel * rr / (1.0 - rr);
      out.value += tail;
      out.error += std::abs(tail);
      return out;
    }
    if (i >= 3 && out.value == 0.0 && p.value == 0.0) return out;
  }
  out.converged = false;
  return out;
}

void WynnEpsilon::push(double s) {
  // table_ holds the current anti-diagonal of the epsilon table
  ++count_;
  if (table_.empty()) {
    table_.push_back(s);
    estimate_ = s;
    error_ = std::numeric_limits<double>::infinity();
    last_ = s;
    return;
  }
  std::vector<double> next;
  next.reserve(table_.size() + 1);
  next.push_back(s);
  double prev_prev = 0.0;  // eps_{-1}
  for (std::size_t k = 0; k < table_.size(); ++k) {
    const double diff = next[k] - table_[k];
    const double below = (k == 0) ? 0.0 : prev_prev;
    double val;
    if (diff == 0.0 || !std::isfinite(diff)) {
      val = std::numeric_limits<double>::infinity();
    } else {
      val = below + 1.0 / diff;
    }
    prev_prev = table_[k];
    next.push_back(val);
    if (!std::isfinite(val)) break;
  }
  table_ = std::move(next);
  // highest even column that is finite
  double best = s;
  for (std::size_t k = 0; k < table_.size(); k += 2)
    if (std::isfinite(table_[k])) best = table_[k];
  error_ = std::abs(best - last_);
  last_ = best;
  estimate_ = best;
  if (table_.size() > 40) table_.resize(40);
}

}  // namespace magnoise::quad

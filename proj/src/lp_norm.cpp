#include "lpfourier/lp_norm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lpf {

namespace {

std::vector<double> core_breakpoints(const TestFunction& f, double lo, double hi) {
  std::vector<double> bps;
  for (double x : f.singular_points)
    if (x > lo && x < hi) bps.push_back(x);
  bps.push_back(0.0);
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  return bps;
}

// |f|^p on one side is |c A|^p when the side has exactly one component with one mode.
bool single_mode(const std::vector<TailComponent>& side) {
  return side.empty() || (side.size() == 1 && side[0].modes.size() == 1);
}

QuadratureResult side_from_model(const std::vector<TailComponent>& side, double onset, double p,
                                 double tol) {
  if (side.empty()) return {};
  const TailComponent& c = side[0];
  const double k = std::pow(std::abs(c.modes[0].coefficient), p);
  const double beta = c.bound_exponent * p;
  if (c.pure_power) {
    QuadratureResult r;
    r.value = k * std::pow(c.bound_constant, p) * std::pow(onset, 1.0 - beta) / (beta - 1.0);
    r.evaluations = 0;
    return r;
  }
  const RealFn amp = c.amplitude;
  return integrate_power_tail([amp, k, p](double t) -> Complex { return k * std::pow(amp(t), p); },
                              onset, k * std::pow(c.bound_constant, p), beta, tol);
}

QuadratureResult core(const TestFunction& f, const ComplexFn& g, double lo, double hi, double tol) {
  const auto bps = core_breakpoints(f, lo, hi);
  const double span = hi - lo;
  std::size_t budget = kDefaultSubdivisions;
  if (f.frequency > 0.0) budget += static_cast<std::size_t>(4.0 * span * f.frequency);
  return integrate_finite(g, lo, hi, tol, bps, budget);
}

QuadratureResult power_integral(const TestFunction& f, double p, double tol) {
  const ComplexFn g = [&f, p](double t) -> Complex { return std::pow(std::abs(f.eval(t)), p); };

  if (f.tail && single_mode(f.tail->positive) && single_mode(f.tail->negative)) {
    const double T = f.tail->onset;
    QuadratureResult r = core(f, g, -T, T, tol / 2);
    r += side_from_model(f.tail->positive, T, p, tol / 4);
    r += side_from_model(f.tail->negative, T, p, tol / 4);
    return r;
  }
  if (f.periodic && f.periodic->exponent * p > 1.0) {
    const PeriodicTail& pt = *f.periodic;
    const double T = pt.onset;
    QuadratureResult r = core(f, g, -T, T, tol / 2);
    const ComplexFn pos = pt.positive, neg = pt.negative;
    r += integrate_periodic_power([pos, p](double t) -> Complex { return std::pow(std::abs(pos(t)), p); },
                                  pt.period, pt.exponent * p, T, tol / 4);
    r += integrate_periodic_power([neg, p](double t) -> Complex { return std::pow(std::abs(neg(t)), p); },
                                  pt.period, pt.exponent * p, T, tol / 4);
    return r;
  }
  LineHints hints;
  hints.breakpoints = f.singular_points;
  hints.frequency = f.frequency;
  return integrate_line(g, power_of(f.decay, p), tol, hints);
}

}  // namespace

NormResult lp_norm_checked(const TestFunction& f, double p, double rel_tol) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("lp_norm: need finite p >= 1");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("lp_norm: rel_tol must be positive");
  if (!f.in_lp(p)) {
    std::ostringstream os;
    os << f.id << " is not in L^" << p << " (membership " << f.lp.describe() << ")";
    throw HypothesisError("f in L^p", os.str());
  }
  // A coarse pass fixes the scale, the second meets the relative target:
  // dN = N dI / (p I).
  const QuadratureResult coarse = power_integral(f, p, std::max(1e-4, 0.1 * rel_tol));
  const double scale = std::abs(coarse.value.real());
  if (!(scale > 0.0)) return {0.0, coarse.abs_error_estimate, coarse.converged};
  const double tol = 0.5 * rel_tol * p * scale;
  const QuadratureResult fine = tol < coarse.abs_error_estimate || !coarse.converged
                                    ? power_integral(f, p, tol)
                                    : coarse;
  const double I = fine.value.real();
  NormResult out;
  out.value = std::pow(I, 1.0 / p);
  out.abs_error_estimate = out.value * fine.abs_error_estimate / (p * I);
  out.converged = fine.converged && out.abs_error_estimate <= rel_tol * out.value;
  return out;
}

double lp_norm(const TestFunction& f, double p, double rel_tol) { return lp_norm_checked(f, p, rel_tol).value; }

}  // namespace lpf

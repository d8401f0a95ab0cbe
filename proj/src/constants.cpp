#include "lpfourier/constants.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lpfourier/parallel.hpp"
#include "lpfourier/quadrature.hpp"

namespace lpf {

namespace {

// int_0^inf |sin t / t|^q: the first arch directly, the rest as a periodic power tail.
QuadratureResult sinc_power_integral(double q, double tol) {
  QuadratureResult head = integrate_finite(
      [q](double t) -> Complex { return std::pow(std::sin(t) / t, q); }, 0.0, kPi, tol / 4);
  head += integrate_periodic_power([q](double t) -> Complex { return std::pow(std::abs(std::sin(t)), q); },
                                   kPi, q, kPi, tol / 2);
  return head;
}

}  // namespace

ConstantValue cq(double q, double tol) {
  if (std::isinf(q) && q > 0) return {1.0, 0.0};
  if (!(q > 1.0)) {
    std::ostringstream os;
    os << "q = " << q << ": the defining integral diverges, C_q -> inf as q -> 1+";
    throw HypothesisError("q > 1", os.str());
  }
  if (!(tol > 0.0)) throw std::invalid_argument("cq: tol must be positive");
  // dC = C dI / (q I); a coarse pass fixes the scale of I.
  const QuadratureResult coarse = sinc_power_integral(q, 1e-6);
  const double I0 = coarse.value.real();
  const double C0 = std::pow(4.0 * I0, 1.0 / q);
  const QuadratureResult fine = sinc_power_integral(q, 0.5 * tol * q * I0 / C0);
  const double I = fine.value.real();
  ConstantValue out;
  out.value = std::pow(4.0 * I, 1.0 / q);
  out.abs_error_estimate = out.value * fine.abs_error_estimate / (q * I);
  return out;
}

double bq(double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("bq: need q >= 1");
  if (std::isinf(q)) return 1.0;
  if (q == 1.0) return 2.0 * kPi;
  const double p = q / (q - 1.0);
  const double first = std::pow(2.0 * kPi, 1.0 / q) *
                       std::sqrt(std::pow(q, 1.0 - 2.0 / q) * std::pow(q - 1.0, 1.0 / q - 1.0));
  const double second = std::pow(2.0 * kPi, 1.0 / q) * std::sqrt(std::pow(p, 1.0 / p) / std::pow(q, 1.0 / q));
  if (std::abs(first - second) > 64 * std::numeric_limits<double>::epsilon() * first) {
    std::ostringstream os;
    os.precision(17);
    os << "bq(" << q << "): closed forms disagree, " << first << " vs " << second;
    throw std::logic_error(os.str());
  }
  return first;
}

ConstantReport compare_constants(double q, double tol) {
  ConstantReport r;
  r.q = q;
  const ConstantValue c = cq(q, tol);
  r.c_q = c.value;
  r.c_q_error = c.abs_error_estimate;
  r.b_q = bq(q);
  r.difference = r.c_q - r.b_q;
  if (std::abs(r.difference) > r.c_q_error) r.sign_of_difference = r.difference > 0 ? 1 : -1;
  return r;
}

std::vector<ConstantReport> conjecture_scan(const std::vector<double>& q_grid, double tol, bool allow_near_one) {
  for (double q : q_grid) {
    if (!(q > 1.0)) {
      std::ostringstream os;
      os << "q = " << q << " is outside (1, inf)";
      throw HypothesisError("q > 1", os.str());
    }
    if (q < 1.05 && !allow_near_one) {
      std::ostringstream os;
      os << "q = " << q << " is below 1.05; pass the near-one override to scan it";
      throw std::invalid_argument(os.str());
    }
  }
  std::vector<ConstantReport> out(q_grid.size());
  parallel_for(q_grid.size(), [&](std::size_t i) { out[i] = compare_constants(q_grid[i], tol); });
  return out;
}

}  // namespace lpf

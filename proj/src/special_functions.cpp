#include "lpfourier/special_functions.hpp"

#include <cmath>
#include <complex>

#include "lpfourier/types.hpp"

namespace lpf {

namespace {

double si_series(double x) {
  // sum_k (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
  const double x2 = x * x;
  double term = x;  // x^(2k+1)/(2k+1)!
  double sum = x;
  for (int k = 1; k < 60; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    const double add = term / (2.0 * k + 1.0);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Continued fraction for E1(ix) e^{ix}, modified Lentz; good for x > 2.
double si_continued_fraction(double x) {
  using C = std::complex<double>;
  constexpr double tiny = 1e-300;
  C b(1.0, x);
  C c = 1.0 / tiny;
  C d = 1.0 / b;
  C h = d;
  for (int i = 2; i < 1000; ++i) {
    const double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const C del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  h *= C(std::cos(x), -std::sin(x));
  const C cs = -std::conj(h) + C(0.0, kPi / 2.0);
  return cs.imag();
}

}  // namespace

double si(double x) {
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  const double v = ax <= 4.0 ? si_series(ax) : si_continued_fraction(ax);
  return x < 0.0 ? -v : v;
}

double erf(double x) { return std::erf(x); }

}  // namespace lpf

#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "lpfourier/types.hpp"

namespace lpf {

struct QuadratureResult {
  Complex value{};
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;

  // Sum of two independent pieces: values and errors add, convergence is joint.
  QuadratureResult& operator+=(const QuadratureResult& other);
  QuadratureResult& operator*=(Complex c);
};

QuadratureResult operator+(QuadratureResult a, const QuadratureResult& b);
QuadratureResult operator*(Complex c, QuadratureResult r);

struct CompactSupport {
  double lo;
  double hi;
};

// |f(t)| <= constant * |t|^-exponent for |t| >= onset
struct PowerTail {
  double exponent;
  double onset;
  double constant;
};

// |f(t)| <= constant * exp(-rate |t|) for |t| >= onset
struct ExponentialTail {
  double rate;
  double onset;
  double constant;
};

using DecayInfo = std::variant<CompactSupport, PowerTail, ExponentialTail>;

// Checks the invariants of a decay description; throws std::invalid_argument.
void validate(const DecayInfo& decay);

// Decay of |f|^p given the decay of f.
DecayInfo power_of(const DecayInfo& decay, double p);

inline constexpr std::size_t kDefaultSubdivisions = 4000;

// Globally adaptive Gauss-Kronrod (7/15). Open rule: endpoints are never
// evaluated. Breakpoints strictly inside (a, b) seed the initial partition.
QuadratureResult integrate_finite(const ComplexFn& f, double a, double b, double tol,
                                  std::span<const double> breakpoints = {},
                                  std::size_t max_subdivisions = kDefaultSubdivisions);

struct LineHints {
  std::vector<double> breakpoints;
  double frequency = 0.0;  // dominant oscillation of the integrand, if any
};

// Whole-line integral: analytic tail bound below tol/2, core by integrate_finite.
// Throws QuadratureError when the decay description cannot reach tol.
QuadratureResult integrate_line(const ComplexFn& f, const DecayInfo& decay, double tol,
                                const LineHints& hints = {});

enum class Oscillator { Sine, Cosine };

// int_from^inf amplitude(t) * sin(wt) (or cos(wt)) dt, lobe by lobe between
// zeros of the oscillator, with epsilon-algorithm acceleration of the partial sums.
QuadratureResult integrate_oscillatory(const RealFn& amplitude, double frequency, double from,
                                       double tol, Oscillator kind = Oscillator::Sine);

// int_from^inf exp(i nu t) amplitude(t) dt for nu != 0.
QuadratureResult integrate_fourier_tail(const RealFn& amplitude, double nu, double from,
                                        double tol);

// int_from^inf f for |f(t)| <= constant t^-exponent (exponent > 1) on [from, inf),
// truncated where the bound drops below tol/2, geometric splitting of the core.
QuadratureResult integrate_power_tail(const ComplexFn& f, double from, double constant,
                                      double exponent, double tol);

// int_from^inf P(t) t^-exponent dt for P periodic with the given period and
// exponent > 1. The far tail is summed through the period mean of P and of its
// zero-mean antiderivative; the remainder after that is bounded explicitly.
QuadratureResult integrate_periodic_power(const ComplexFn& periodic, double period,
                                          double exponent, double from, double tol);

// Points from*2^k strictly inside (from, to), plus `to` if requested.
std::vector<double> geometric_points(double from, double to);

}  // namespace lpf

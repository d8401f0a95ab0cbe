#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lpfourier/test_function.hpp"

namespace lpf {

struct BVPiece {
  ComplexFn value;
  ComplexFn derivative;
};

// One-sided limits at a breakpoint and the value taken there.
struct BVJump {
  Complex left;
  Complex at;
  Complex right;
};

// g'(s) = positive |s|^-exponent for s >= onset and g'(s) = negative |s|^-exponent
// for s <= -onset, exactly.
struct PowerDerivativeTail {
  double onset = 1.0;
  double exponent = 2.0;
  Complex positive = 0.0;
  Complex negative = 0.0;
};

// Near 0+, |g(t)| <= constant t^-exponent and |g'(t)| <= derivative_constant t^-exponent-1,
// up to the first positive breakpoint.
struct SingularAtZero {
  double exponent = 0.0;
  double constant = 1.0;
  double derivative_constant = 1.0;
};

// Piecewise C^1 plus jumps. pieces[i] lives on (breakpoints[i-1], breakpoints[i]),
// with the outer pieces extending to -inf and +inf.
struct BVFunction {
  std::string id;
  std::vector<double> breakpoints;
  std::vector<BVPiece> pieces;
  std::vector<BVJump> jumps;
  std::optional<DecayInfo> decay;             // |g|
  std::optional<DecayInfo> derivative_decay;  // |g'|, outside the breakpoints
  std::optional<PowerDerivativeTail> power_tail;
  std::optional<SingularAtZero> singular_at_zero;
  double sup_bound = kInf;             // sup |g|
  double derivative_sup_bound = kInf;  // sup |g'| away from breakpoints
  bool absolutely_continuous = false;
  bool vanishes_at_infinity = false;
  std::shared_ptr<const TestFunction> as_function;  // the same g, for classical transforms

  Complex operator()(double s) const;
  Complex derivative(double s) const;  // 0 at breakpoints
  std::size_t piece_index(double s) const;  // piece containing s (s not a breakpoint)
};

// Checks sizes, ordering and the agreement of the pieces with the stored limits.
void validate(const BVFunction& g);

// A single smooth piece on the whole line.
BVFunction smooth_bv(std::string id, ComplexFn value, ComplexFn derivative);

// s -> e^{ixs} g(s).
BVFunction modulate(const BVFunction& g, double x);

// g1 * g2 pointwise.
BVFunction product(const BVFunction& g1, const BVFunction& g2);

struct BVEntry {
  std::string name;
  std::string description;
  std::optional<double> default_parameter;
};

const std::vector<BVEntry>& bv_entries();

// constant, indicator_01, ramp, power_tail:alpha, sinc, gaussian, fejer:a, poisson:a,
// gauss_weierstrass:a, dirichlet:a, singular_power:gamma.
BVFunction bv_builtin(const std::string& name, std::optional<double> param = std::nullopt);
BVFunction bv_builtin_spec(const std::string& spec);

// Summability kernels K_a as functions of s. K_a is the classical transform of the
// matching catalog psi_a: (1 - a|s|)_+, e^{-a|s|}, e^{-a^2 s^2}, chi_[-1/a, 1/a].
BVFunction fejer_kernel(double a);
BVFunction poisson_kernel(double a);
BVFunction gauss_weierstrass_kernel(double a);
BVFunction dirichlet_kernel(double a);

}  // namespace lpf

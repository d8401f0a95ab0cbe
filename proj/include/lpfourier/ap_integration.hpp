#pragma once

#include <string>

#include "lpfourier/bv_function.hpp"

namespace lpf {

struct VariationResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  bool divergent = false;
  std::string reason;  // why the tail could not be bounded, when divergent
};

// sum of int |g'| over the pieces plus the jump sizes inside [a, b]. At an endpoint
// only the half of the jump on the inside counts.
double total_variation(const BVFunction& g, double a, double b, double tol = 1e-10);

// int |s|^e |dg(s)| over the whole line with certified tails; e = 0 is the total variation.
VariationResult moment_variation(const BVFunction& g, double e, double tol = 1e-8);

// int |s|^{1/p} |dg(s)|.
VariationResult weighted_variation(const BVFunction& g, double p, double tol = 1e-8);

// Riemann-Stieltjes int_a^b F dg for continuous F: the pieces contribute int F g' and
// each jump F(s)(g(s+) - g(s-)), with g(a), g(b) taken as the stored point values.
QuadratureResult stieltjes(const ComplexFn& F, const BVFunction& g, double a, double b, double tol);

struct DecayVerdict {
  bool pass = false;
  std::string reason;
};

// g = o(|x|^{-1/p}) from the declared decay exponent beta: beta > 1/p, or p = 1 and beta >= 1.
DecayVerdict decay_check(const BVFunction& g, double p);

// int_a^b fhat g = Psi_f(b) g(b) - Psi_f(a) g(a) - int_a^b Psi_f dg.
QuadratureResult integrate_fhat_g_finite(const TestFunction& f, const BVFunction& g, double a, double b,
                                         double tol = 1e-8);

// int fhat g = -int Psi_f dg over the line. Tails beyond the breakpoints are either
// bounded through |Psi_f(s)| <= C_q ||f||_p |s|^{1/p}, or, for an exact power tail
// of g', computed by exchanging the order: int_T^inf Psi_f(s) s^-d ds = int f(t) k_T(t) dt.
// Throws HypothesisError when f is not in L^p, g is not of bounded variation, or the
// decay check fails.
QuadratureResult integrate_fhat_g_line(const TestFunction& f, const BVFunction& g, double p, double tol = 1e-8);

// int_0^a fhat g = Psi_f(a) g(a) - int_{0+}^a Psi_f dg for g = o(x^{-1/p}) at 0+, with
// the Stieltjes integral taken on geometrically refined intervals toward 0.
QuadratureResult integrate_fhat_halfline_singular(const TestFunction& f, const BVFunction& g, double a, double p,
                                                  double tol = 1e-8);

// int_T^inf Psi_f(s) s^-d ds for d > 1 by exchanging the order of integration
// (sign = -1 gives int_T^inf Psi_f(-s) s^-d ds).
QuadratureResult power_tail_pairing(const TestFunction& f, double T, double d, int sign, double tol);

}  // namespace lpf

#pragma once

#include <string>
#include <vector>

#include "lpfourier/ap_integration.hpp"

namespace lpf {

// Classical transform int e^{-ist} g(t) dt. Needs g in L^1, or a tail model made of
// non-oscillating powers, in which case the improper integral is taken for s != 0.
QuadratureResult fhat_direct(const TestFunction& g, double s, double tol = 1e-10);

// int f(t) g(x - t) dt. Needs one factor in L^1 and the other in some L^p.
QuadratureResult convolve(const TestFunction& f, const TestFunction& g, double x, double tol = 1e-10);

// x -> (f * g)(x) as a test function, evaluated pointwise by quadrature.
TestFunction convolution_function(const TestFunction& f, const TestFunction& g, double tol = 1e-11);

struct EqualityReport {
  std::string check;
  Complex lhs = 0.0;
  Complex rhs = 0.0;
  double abs_diff = 0.0;
  double budget = 0.0;
  double lhs_error = 0.0;
  double rhs_error = 0.0;
  double bound = std::numeric_limits<double>::quiet_NaN();  // when the check has one
  bool converged = true;
  bool pass = false;  // abs_diff <= budget and both sides converged
};

// int fhat g = int f ghat: left side by integration by parts against Psi_f, right side
// by quadrature of f times the classical transform of g. The bound field is
// C_q ||f||_p int |s|^{1/p} |dg(s)|.
EqualityReport exchange_check(const TestFunction& f, const BVFunction& g, double p, double tol = 1e-6);

enum class KernelVariant { CesaroFejer, AbelPoisson, GaussWeierstrass, Dirichlet };

KernelVariant parse_kernel(const std::string& name);
std::string kernel_name(KernelVariant v);

struct InversionHypotheses {
  double p = 1.0;
  bool psi_integrable = false;
  double mass = 0.0;  // int psi_a
  bool unit_mass = false;
  bool absolutely_continuous = false;  // K_a
  double moment = 0.0;                 // int |s|^{1/p} |K_a|
  bool moment_finite = false;
  double derivative_moment = 0.0;      // int |s|^{1/p} |K_a'|, with K_a absolutely continuous
  bool derivative_moment_finite = false;
  bool all() const { return psi_integrable && unit_mass && absolutely_continuous && moment_finite && derivative_moment_finite; }
  std::string failures() const;
};

struct KernelFamily {
  KernelVariant variant;
  double a = 1.0;
  BVFunction K;         // K_a, the transform of psi_a
  TestFunction psi;     // psi_a
  InversionHypotheses flags;  // evaluated at p = 1, the heaviest weight
};

KernelFamily make_kernel(KernelVariant variant, double a);

InversionHypotheses inversion_hypotheses(const KernelFamily& k, double p);

enum class InversionRoute { Convolution, Stieltjes };

// I_a[f](x) = (1/2pi) int e^{ixs} K_a(s) fhat(s) ds. The convolution route computes
// f * psi_a(x); the Stieltjes route integrates by parts against Psi_f. Rejects kernels
// whose stored flags do not all hold.
QuadratureResult inversion_apply(const TestFunction& f, const KernelFamily& k, double x, InversionRoute route,
                                 double p, double tol = 1e-8);

struct SweepRow {
  double a = 0.0;
  double distance = 0.0;  // ||f - I_a f||_p
  double abs_error_estimate = 0.0;
  bool converged = true;
};

// L^p distance of f from its smoothing, one row per a in the given order. The cost of
// the tails grows like 1/rel_tol for kernels with 1/t^2 decay.
std::vector<SweepRow> inversion_sweep(const TestFunction& f, KernelVariant variant, double p,
                                      const std::vector<double>& a_list, double rel_tol = 1e-2);

// x -> f(x) - (f * psi_a)(x).
TestFunction inversion_residual(const TestFunction& f, const KernelFamily& k);

// Sufficient conditions for ghat in L^1 or of bounded variation, read from metadata.
struct PropositionReport {
  bool derivative_lp = false;         // g AC, g -> 0, g' in L^p for some 1 < p <= 2: ghat in L^1
  bool moment_derivative_lp = false;  // same for h = x g: ghat of bounded variation
  bool derivative_bv = false;         // g AC, g, g' in L^1, g' of bounded variation: ghat in L^1
  bool moment_derivative_bv = false;  // same for h = x g: ghat of bounded variation
  bool fhat_in_l1 = false;
  bool fhat_in_bv = false;
  bool closed_form_bv = false;  // the catalog transform is of bounded variation
  bool sufficient_only = false;  // closed form is BV while no clause applies
  std::vector<std::string> triggered;
};

PropositionReport proposition_checker(const TestFunction& g);

// int (f*g1)^ g2 = int fhat g1hat g2. Left side pairs Psi of the convolution with g2,
// right side pairs Psi_f with the product g1hat g2.
EqualityReport convolution_exchange_check(const TestFunction& f, const TestFunction& g1, const BVFunction& g2,
                                          double p, double tol = 1e-5);

// g1 * g2 as a BV function, evaluated pointwise; g1 must have compact support.
BVFunction convolution_bv(const BVFunction& g1, const TestFunction& g2, double tol = 1e-11);

struct DoubleKernelReport {
  EqualityReport equality;
  double variation = 0.0;        // V(g1 * g2)
  double variation_bound = 0.0;  // V g1 ||g2||_1
  double weighted_variation = 0.0;  // int |s|^{1/p} |d(g1 * g2)|
  bool variation_bound_holds = false;
};

// int fhat (g1 * g2) = int f g1hat g2hat.
DoubleKernelReport double_kernel_check(const TestFunction& f, const BVFunction& g1, const TestFunction& g2, double p,
                                       double tol = 1e-5);

}  // namespace lpf

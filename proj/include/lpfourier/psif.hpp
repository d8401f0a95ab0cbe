#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lpfourier/constants.hpp"
#include "lpfourier/test_function.hpp"

namespace lpf {

// p in [1, inf) with its conjugate; only p is stored.
struct Exponents {
  double p = 2.0;
  explicit Exponents(double p_);
  double q() const { return p == 1.0 ? kInf : p / (p - 1.0); }
};

// u_s(t) = (1 - e^{-ist}) / (it), u_s(0) = s.
Complex u_kernel(double s, double t);

// arg u_s(t) in (-pi, pi], 0 where u_s(t) = 0.
double u_kernel_phase(double s, double t);

// n-th derivative in t of u_s.
Complex u_kernel_deriv(int n, double s, double t);

// Psi_f(s) = int u_s(t) f(t) dt to absolute tolerance tol. psif(f, 0) is exactly 0.
// Non-convergence is reported through the flag; f outside every L^p (and not
// flagged as still integrable) throws HypothesisError.
QuadratureResult psif(const TestFunction& f, double s, double tol = 1e-10);

// Psi of the point mass at a: u_s(a).
Complex psif_dirac(double a, double s);

// ||Psi_f||'_p, which is ||f||_p by definition.
double primitive_norm(const TestFunction& f, double p, double rel_tol = 1e-10);

struct BoundCheck {
  double lhs = 0.0;           // |Psi_f(s)| or the Hoelder ratio
  double bound = 0.0;         // C_q ||f||_p |s|^{1/p} or C_q ||f||_p
  double margin = 0.0;        // bound - lhs
  double error_budget = 0.0;  // combined quadrature error of both sides
  double s = 0.0;
  double h = 0.0;
  bool holds(double factor = 10.0) const { return margin >= -factor * error_budget; }
};

// C_q ||f||_p |s|^{1/p} - |Psi_f(s)|.
BoundCheck growth_bound_margin(const TestFunction& f, double p, double s, double tol = 1e-10);

// growth_bound_margin at each s, sharing one norm and evaluating Psi in parallel.
std::vector<BoundCheck> growth_bound_margins(const TestFunction& f, double p, const std::vector<double>& s,
                                             double tol = 1e-10);

// max over the sample grid of |Psi_f(s+h) - Psi_f(s)| / h^{1/p}, with the bound C_q ||f||_p.
BoundCheck holder_ratio_max(const TestFunction& f, double p, const std::vector<double>& s_samples,
                            const std::vector<double>& h_samples, double tol = 1e-10);

// Psi values memoized per (s, tol) for one function. Caller-owned, not thread safe.
class PsifCache {
 public:
  explicit PsifCache(TestFunction f) : f_(std::move(f)) {}
  const QuadratureResult& at(double s, double tol);
  const TestFunction& function() const { return f_; }
  std::size_t size() const { return memo_.size(); }

 private:
  TestFunction f_;
  std::map<std::pair<double, double>, QuadratureResult> memo_;
};

struct PsifSamples {
  std::string f_id;
  double p = 2.0;
  std::vector<double> grid;  // sorted
  std::vector<Complex> values;
  std::vector<double> errors;
  std::vector<bool> converged;
};

// Psi_f on a grid, evaluated in parallel.
PsifSamples sample_psif(const TestFunction& f, double p, std::vector<double> grid, double tol = 1e-10);

// f_s = |u_s|^{q/p} e^{-i theta}, the function attaining |Psi_f(s)| = C_q ||f||_p |s|^{1/p}.
TestFunction extremal_function(double s, double p);

struct EqualityCheck {
  double psif_abs = 0.0;
  double bound = 0.0;  // C_q ||f_s||_p |s|^{1/p}
  double ratio = 0.0;
  double ratio_error = 0.0;
};
EqualityCheck extremal_equality(double s, double p, double tol = 1e-9);

// Transform identities. Each formula route evaluates the right-hand side from f
// alone; the matching check also computes psif of the transformed function.
QuadratureResult psif_translate(const TestFunction& f, double a, double s, double tol = 1e-10);
QuadratureResult psif_modulate(const TestFunction& f, double a, double s, double tol = 1e-10);
QuadratureResult psif_reflect(const TestFunction& f, double s, double tol = 1e-10);
QuadratureResult psif_dilate(const TestFunction& f, double a, double b, double s, double tol = 1e-10);
// Psi of F' from F alone: -int u_s'(t) F(t) dt. Needs F absolutely continuous.
QuadratureResult psif_of_derivative(const TestFunction& F, double s, double tol = 1e-10);

struct TwoRouteCheck {
  std::string identity;
  double s = 0.0;
  Complex formula = 0.0;
  Complex direct = 0.0;
  double formula_error = 0.0;
  double direct_error = 0.0;
  bool converged = true;
  double discrepancy() const { return std::abs(formula - direct); }
};

TwoRouteCheck check_translate(const TestFunction& f, double a, double s, double tol = 1e-11);
TwoRouteCheck check_modulate(const TestFunction& f, double a, double s, double tol = 1e-11);
TwoRouteCheck check_reflect(const TestFunction& f, double s, double tol = 1e-11);
TwoRouteCheck check_dilate(const TestFunction& f, double a, double b, double s, double tol = 1e-11);
// Needs F.derivative for the direct side.
TwoRouteCheck check_derivative(const TestFunction& F, double s, double tol = 1e-11);

}  // namespace lpf

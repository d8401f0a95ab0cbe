#pragma once

#include "lpfourier/test_function.hpp"

namespace lpf {

struct NormResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  bool converged = true;
};

// (int |f|^p)^{1/p} to relative tolerance `rel_tol`.
// Throws HypothesisError when f is not declared in L^p.
NormResult lp_norm_checked(const TestFunction& f, double p, double rel_tol);
double lp_norm(const TestFunction& f, double p, double rel_tol);

}  // namespace lpf

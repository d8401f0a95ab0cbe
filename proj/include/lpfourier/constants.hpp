#pragma once

#include <vector>

#include "lpfourier/types.hpp"

namespace lpf {

struct ConstantValue {
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

// C_q = (4 int_0^inf |sin t / t|^q dt)^{1/q}, C_inf = 1. Throws HypothesisError for q <= 1.
ConstantValue cq(double q, double tol = 1e-10);

// Babenko-Beckner constant, q in [1, inf]. Both printed closed forms are evaluated
// and must agree; a mismatch throws std::logic_error.
double bq(double q);

struct ConstantReport {
  double q = 0.0;
  double c_q = 0.0;
  double b_q = 0.0;
  double c_q_error = 0.0;
  double difference = 0.0;  // c_q - b_q
  int sign_of_difference = 0;  // 0 when |difference| <= c_q_error
};

ConstantReport compare_constants(double q, double tol);

// One report per q, computed in parallel. q below 1.05 is refused unless
// allow_near_one is set, since the quadrature cost grows without bound as q -> 1.
std::vector<ConstantReport> conjecture_scan(const std::vector<double>& q_grid, double tol,
                                            bool allow_near_one = false);

}  // namespace lpf

#pragma once

namespace lpf {

// Sine integral Si(x) = int_0^x sin(t)/t dt.
double si(double x);

// Error function.
double erf(double x);

}  // namespace lpf

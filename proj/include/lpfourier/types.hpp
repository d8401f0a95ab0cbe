#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace lpf {

using Complex = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<Complex(double)>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// A rejected precondition of the mathematics (not a programming error).
// `hypothesis()` is a short stable name that reports and the CLI print.
class HypothesisError : public std::invalid_argument {
 public:
  HypothesisError(std::string hypothesis, const std::string& detail)
      : std::invalid_argument(hypothesis + ": " + detail), hypothesis_(std::move(hypothesis)) {}
  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

// Requested accuracy that the available tail information cannot certify.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lpf

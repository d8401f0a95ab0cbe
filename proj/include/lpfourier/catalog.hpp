#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpfourier/test_function.hpp"

namespace lpf {

struct CatalogEntry {
  std::string name;
  std::string description;
  std::optional<double> default_parameter;
};

// All published entries, in a fixed order.
const std::vector<CatalogEntry>& catalog_entries();

// Named entry; `param` overrides the default (the exponent p for abs_pow*,
// alpha for pow_tail/remark_piecewise, a for kernels and the heat kernel).
// Throws std::invalid_argument listing the available names.
TestFunction builtin(const std::string& name, std::optional<double> param = std::nullopt);

// "name" or "name:param", with the parameter parsed strictly.
std::pair<std::string, std::optional<double>> split_spec(const std::string& spec);

// "name" or "name:param".
TestFunction builtin_spec(const std::string& spec);

// One line per entry: id, L^p membership, available oracles.
std::vector<std::string> catalog_listing();

// The integrals int_0^inf t^{-1-1/p} sin t dt and int_0^inf (1 - cos t) t^{-1-1/p} dt,
// computed by oscillatory quadrature.
double abs_pow_sine_constant(double p);
double abs_pow_cosine_constant(double p);

}  // namespace lpf

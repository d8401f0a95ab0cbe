#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpfourier/report.hpp"

namespace lpf {

// start:stop:count[:linear|log]
struct GridSpec {
  double start = 0.0;
  double stop = 1.0;
  int count = 2;
  bool log = false;
};

// Throws std::invalid_argument unless start < stop, count >= 2 and, for log, start > 0.
GridSpec parse_grid(const std::string& spec);
std::vector<double> grid_values(const GridSpec& g);

// A grid spec or a comma separated list of numbers.
std::vector<double> parse_values(const std::string& spec);

struct RunConfig {
  std::string subcommand;
  std::optional<double> tol;  // per-subcommand default when unset
  ReportFormat format = ReportFormat::Csv;
  std::string out;  // empty: stdout
  std::uint64_t seed = 1;
  std::string qgrid = "1.2:10:12:log";
  std::string sgrid = "0:10:101";
  std::string alist = "1,0.5,0.25,0.125,0.0625";
  std::vector<std::string> f;
  std::string g;
  std::string g2;
  std::string kernel = "fejer";
  std::vector<double> p;
  std::string thm = "product";
  std::string range = "line";
};

struct RunResult {
  Table table{{}};
  bool pass = true;
  std::vector<std::string> messages;  // rejections and failed checks, one per line
};

// Runs one subcommand. Hypothesis rejections become rows with pass = false and a reason.
// Unknown names or malformed grids throw std::invalid_argument.
RunResult execute(const RunConfig& cfg);

double default_tolerance(const std::string& subcommand);

// Exit 0 when every check passes, 1 on rejection, failed check or unwritable output, 2 on usage errors.
int cli_main(int argc, const char* const* argv);

}  // namespace lpf

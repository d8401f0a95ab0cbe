#include "lpfourier/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "lpfourier/analysis.hpp"
#include "lpfourier/ap_integration.hpp"
#include "lpfourier/catalog.hpp"
#include "lpfourier/constants.hpp"
#include "lpfourier/lp_norm.hpp"
#include "lpfourier/parallel.hpp"
#include "lpfourier/psif.hpp"

namespace lpf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double parse_number(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v))
    throw std::invalid_argument("not a finite number: '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

const std::vector<double>& default_p_list() {
  static const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 5.0};
  return ps;
}

std::vector<double> p_list(const RunConfig& cfg) { return cfg.p.empty() ? default_p_list() : cfg.p; }

double single_p(const RunConfig& cfg, double fallback) {
  if (cfg.p.size() > 1) throw std::invalid_argument(cfg.subcommand + " takes a single --p");
  const double p = cfg.p.empty() ? fallback : cfg.p.front();
  if (!(p >= 1.0)) throw std::invalid_argument("--p must be at least 1");
  return p;
}

std::string single_f(const RunConfig& cfg, const std::string& fallback) {
  if (cfg.f.size() > 1) throw std::invalid_argument(cfg.subcommand + " takes a single --f");
  return cfg.f.empty() ? fallback : cfg.f.front();
}

std::vector<std::string> f_list(const RunConfig& cfg) {
  if (!cfg.f.empty()) return cfg.f;
  std::vector<std::string> all;
  for (const auto& e : catalog_entries()) all.push_back(e.name);
  return all;
}

void reject(RunResult& r, const std::string& what) {
  r.pass = false;
  r.messages.push_back("rejected: " + what);
}

void fail(RunResult& r, const std::string& what) {
  r.pass = false;
  r.messages.push_back("failed: " + what);
}

std::string oracles_of(const TestFunction& f) {
  std::vector<std::string> o;
  if (f.closed_form_psif) o.push_back("psif");
  if (f.closed_form_fhat) o.push_back("fhat");
  if (f.known_lp_norm) o.push_back("lp_norm");
  if (f.derivative) o.push_back("derivative");
  std::string s;
  for (const auto& x : o) s += (s.empty() ? "" : ";") + x;
  return s;
}

std::string param_text(const std::optional<double>& p) { return p ? format_number(*p) : ""; }

RunResult run_catalog(const RunConfig&) {
  RunResult r;
  r.table = Table({"kind", "name", "parameter", "lp", "oracles", "description"});
  for (const auto& e : catalog_entries()) {
    const TestFunction f = builtin(e.name);
    r.table.add({"function", e.name, param_text(e.default_parameter), f.lp.describe(), oracles_of(f), e.description});
  }
  for (const auto& e : bv_entries())
    r.table.add({"bv", e.name, param_text(e.default_parameter), "", "", e.description});
  return r;
}

RunResult run_psif(const RunConfig& cfg, double tol) {
  RunResult r;
  r.table = Table({"f", "p", "s", "psif_re", "psif_im", "abs_err", "converged", "closed_re", "closed_im",
                   "closed_diff", "bound", "pass"});
  const std::string name = single_f(cfg, "indicator");
  const TestFunction f = builtin_spec(name);
  const double p = cfg.p.empty() ? kNaN : single_p(cfg, 2.0);
  const PsifSamples smp = sample_psif(f, std::isnan(p) ? 2.0 : p, grid_values(parse_grid(cfg.sgrid)), 0.1 * tol);

  double scale = kNaN;
  if (!std::isnan(p)) {
    if (!f.in_lp(p)) {
      reject(r, "f in L^p: " + f.id + " is not in L^" + format_number(p));
    } else {
      scale = cq(Exponents(p).q()).value * lp_norm(f, p, 1e-10);
    }
  }
  for (std::size_t i = 0; i < smp.grid.size(); ++i) {
    const double s = smp.grid[i];
    const Complex v = smp.values[i];
    Complex closed(kNaN, kNaN);
    double diff = kNaN;
    bool ok = smp.converged[i];
    if (f.closed_form_psif) {
      closed = (*f.closed_form_psif)(s);
      diff = std::abs(v - closed);
      ok = ok && diff <= tol;
    }
    double bound = kNaN;
    if (std::isfinite(scale)) {
      bound = scale * std::pow(std::abs(s), 1.0 / p);
      ok = ok && std::abs(v) <= bound + 10.0 * smp.errors[i];
    }
    if (!ok) fail(r, "psif(" + f.id + ", " + format_number(s) + ")");
    r.table.add({f.id, p, s, v.real(), v.imag(), smp.errors[i], static_cast<bool>(smp.converged[i]), closed.real(),
                 closed.imag(), diff, bound, ok});
  }
  return r;
}

RunResult run_holder(const RunConfig& cfg, double tol) {
  RunResult r;
  r.table = Table({"f", "p", "check", "pairs", "s", "h", "lhs", "bound", "margin", "error_budget", "pass"});
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> su(-10.0, 10.0), lh(std::log(1e-3), std::log(10.0));
  std::vector<double> s(20), h(10);
  for (double& x : s) x = su(rng);
  for (double& x : h) x = std::exp(lh(rng));
  std::vector<double> pts = s;
  for (double a : s)
    for (double b : h) pts.push_back(a + b);

  for (const auto& name : f_list(cfg)) {
    const TestFunction f = builtin_spec(name);
    for (double p : p_list(cfg)) {
      if (!f.in_lp(p)) continue;
      const std::vector<BoundCheck> g = growth_bound_margins(f, p, pts, tol);
      const BoundCheck* worst = &g.front();
      for (const auto& b : g)
        if (b.margin / std::max(b.error_budget, 1e-300) < worst->margin / std::max(worst->error_budget, 1e-300))
          worst = &b;
      const bool gok = std::all_of(g.begin(), g.end(), [](const BoundCheck& b) { return b.holds(); });
      r.table.add({f.id, p, "growth", static_cast<std::int64_t>(g.size()), worst->s, kNaN, worst->lhs, worst->bound,
                   worst->margin, worst->error_budget, gok});
      if (!gok) fail(r, "growth bound for " + f.id + " at p = " + format_number(p));

      const BoundCheck hr = holder_ratio_max(f, p, s, h, tol);
      r.table.add({f.id, p, "holder", static_cast<std::int64_t>(s.size() * h.size()), hr.s, hr.h, hr.lhs, hr.bound,
                   hr.margin, hr.error_budget, hr.holds()});
      if (!hr.holds()) fail(r, "Hoelder bound for " + f.id + " at p = " + format_number(p));
    }
  }
  return r;
}

RunResult run_constants(const RunConfig& cfg, double tol) {
  RunResult r;
  r.table = Table({"q", "c_q", "c_q_err", "b_q", "diff", "sign"});
  const std::vector<ConstantReport> rows = conjecture_scan(grid_values(parse_grid(cfg.qgrid)), tol);
  for (const auto& c : rows) {
    r.table.add({c.q, c.c_q, c.c_q_error, c.b_q, c.difference, static_cast<std::int64_t>(c.sign_of_difference)});
    const int expected = c.q < 2.0 ? 1 : (c.q > 2.0 ? -1 : 0);
    if (c.sign_of_difference != 0 && c.sign_of_difference != expected)
      fail(r, "sign of C_q - B_q at q = " + format_number(c.q) + " is " + std::to_string(c.sign_of_difference));
  }
  return r;
}

// direct int fhat g from the closed-form transform, NaN when there is no usable oracle
QuadratureResult fhat_g_oracle(const TestFunction& f, const BVFunction& g, double a, double b, bool line, double tol) {
  QuadratureResult none;
  none.value = Complex(kNaN, kNaN);
  if (!f.closed_form_fhat) return none;
  const ComplexFn fh = *f.closed_form_fhat;
  const ComplexFn h = [fh, &g](double s) { return fh(s) * g(s); };
  try {
    if (!line) return integrate_finite(h, a, b, tol, g.breakpoints);
    if (!g.decay) return none;
    LineHints hints;
    hints.breakpoints = g.breakpoints;
    return integrate_line(h, combine_decay(*g.decay, std::isfinite(f.sup_bound) ? lp_norm(f, 1.0, 1e-10) : kInf,
                                           *g.decay, 0.0),
                          tol, hints);
  } catch (const std::exception&) {
    return none;
  }
}

RunResult run_integrate(const RunConfig& cfg, double tol) {
  RunResult r;
  r.table = Table({"f", "g", "p", "range", "method", "re", "im", "abs_err", "converged", "oracle_re", "oracle_im",
                   "oracle_diff", "pass", "reason"});
  const TestFunction f = builtin_spec(single_f(cfg, "gaussian"));
  const BVFunction g = bv_builtin_spec(cfg.g.empty() ? "gauss_weierstrass" : cfg.g);
  const double p = single_p(cfg, 2.0);
  const bool line = cfg.range == "line";
  double a = 0.0, b = 0.0;
  if (!line) {
    const auto parts = split(cfg.range, ',');
    if (parts.size() != 2) throw std::invalid_argument("--range takes 'a,b' or 'line'");
    a = parse_number(parts[0]);
    b = parse_number(parts[1]);
    if (!(a < b)) throw std::invalid_argument("--range needs a < b");
  }
  const bool halfline = !line && a == 0.0 && g.singular_at_zero.has_value();
  const std::string method = line ? "line" : (halfline ? "halfline" : "finite");
  try {
    QuadratureResult v;
    if (line) v = integrate_fhat_g_line(f, g, p, tol);
    else if (halfline) v = integrate_fhat_halfline_singular(f, g, b, p, tol);
    else v = integrate_fhat_g_finite(f, g, a, b, tol);
    const QuadratureResult o = fhat_g_oracle(f, g, a, b, line, 0.1 * tol);
    const double diff = std::abs(v.value - o.value);
    const bool ok = v.converged && (std::isnan(diff) || diff <= tol);
    if (!ok) fail(r, "int fhat g for " + f.id + ", " + g.id);
    r.table.add({f.id, g.id, p, cfg.range, method, v.value.real(), v.value.imag(), v.abs_error_estimate, v.converged,
                 o.value.real(), o.value.imag(), diff, ok, ""});
  } catch (const HypothesisError& e) {
    reject(r, e.what());
    r.table.add({f.id, g.id, p, cfg.range, method, kNaN, kNaN, kNaN, false, kNaN, kNaN, kNaN, false, e.what()});
  }
  return r;
}

std::vector<std::string> equality_columns() {
  return {"lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_diff", "budget", "lhs_err", "rhs_err", "bound", "converged", "pass"};
}

void append_equality(std::vector<Cell>& row, const EqualityReport& e) {
  for (Cell c : std::vector<Cell>{e.lhs.real(), e.lhs.imag(), e.rhs.real(), e.rhs.imag(), e.abs_diff, e.budget,
                                  e.lhs_error, e.rhs_error, e.bound, e.converged, e.pass})
    row.push_back(std::move(c));
}

void append_rejected(std::vector<Cell>& row) {
  for (int i = 0; i < 9; ++i) row.emplace_back(kNaN);
  row.emplace_back(false);
  row.emplace_back(false);
}

RunResult run_exchange(const RunConfig& cfg, double tol) {
  RunResult r;
  std::vector<std::string> cols{"f", "g", "p"};
  for (auto& c : equality_columns()) cols.push_back(c);
  cols.push_back("reason");
  r.table = Table(cols);
  const TestFunction f = builtin_spec(single_f(cfg, "gaussian"));
  const BVFunction g = bv_builtin_spec(cfg.g.empty() ? "gauss_weierstrass" : cfg.g);
  const double p = single_p(cfg, 2.0);
  std::vector<Cell> row{f.id, g.id, p};
  try {
    const EqualityReport e = exchange_check(f, g, p, tol);
    append_equality(row, e);
    row.emplace_back("");
    if (!e.pass) fail(r, "exchange for " + f.id + ", " + g.id);
    if (e.pass && !(e.bound >= std::abs(e.lhs) - e.lhs_error))
      fail(r, "|int fhat g| exceeds C_q ||f||_p int |s|^{1/p} |dg| for " + f.id + ", " + g.id);
  } catch (const HypothesisError& e) {
    reject(r, e.what());
    append_rejected(row);
    row.emplace_back(e.what());
  }
  r.table.add(std::move(row));
  return r;
}

RunResult run_invert(const RunConfig& cfg, double tol) {
  RunResult r;
  r.table = Table({"f", "kernel", "p", "a", "distance", "distance_err", "converged", "monotone", "route_diff",
                   "pass", "reason"});
  const TestFunction f = builtin_spec(single_f(cfg, "indicator"));
  const KernelVariant variant = parse_kernel(cfg.kernel);
  const double p = single_p(cfg, 2.0);
  std::vector<double> as = parse_values(cfg.alist);
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  for (double a : as)
    if (!(a > 0.0)) throw std::invalid_argument("--alist values must be positive");

  const KernelFamily probe = make_kernel(variant, as.front());
  if (!probe.flags.all()) {
    const std::string why = "summability kernel hypotheses: " + kernel_name(variant) + " fails " + probe.flags.failures();
    reject(r, why);
    for (double a : as) r.table.add({f.id, kernel_name(variant), p, a, kNaN, kNaN, false, false, kNaN, false, why});
    return r;
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> xu(-2.0, 2.0);
  const std::vector<double> xs{xu(rng), xu(rng), xu(rng)};
  try {
    const std::vector<SweepRow> rows = inversion_sweep(f, variant, p, as);
    std::vector<double> route(as.size(), 0.0);
    parallel_for(as.size(), [&](std::size_t i) {
      const KernelFamily k = make_kernel(variant, as[i]);
      for (double x : xs) {
        const QuadratureResult c = inversion_apply(f, k, x, InversionRoute::Convolution, p, 0.1 * tol);
        const QuadratureResult s = inversion_apply(f, k, x, InversionRoute::Stieltjes, p, 0.1 * tol);
        route[i] = std::max(route[i], std::abs(c.value - s.value));
      }
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
      // rows run in increasing a, so the distance should grow along the table
      bool monotone = true;
      if (i + 1 < rows.size())
        monotone = rows[i].distance <= rows[i + 1].distance + rows[i].abs_error_estimate + rows[i + 1].abs_error_estimate;
      const bool ok = rows[i].converged && monotone && route[i] <= tol;
      if (!ok) fail(r, "inversion of " + f.id + " with " + kernel_name(variant) + " at a = " + format_number(rows[i].a));
      r.table.add({f.id, kernel_name(variant), p, rows[i].a, rows[i].distance, rows[i].abs_error_estimate,
                   rows[i].converged, monotone, route[i], ok, ""});
    }
  } catch (const HypothesisError& e) {
    reject(r, e.what());
    for (double a : as) r.table.add({f.id, kernel_name(variant), p, a, kNaN, kNaN, false, false, kNaN, false, e.what()});
  }
  return r;
}

RunResult run_convolution(const RunConfig& cfg, double tol) {
  RunResult r;
  std::vector<std::string> cols{"thm", "f", "g1", "g2", "p"};
  for (auto& c : equality_columns()) cols.push_back(c);
  for (const char* c : {"variation", "variation_bound", "reason"}) cols.push_back(c);
  r.table = Table(cols);
  const double p = single_p(cfg, 2.0);
  const TestFunction f = builtin_spec(single_f(cfg, "indicator"));
  if (cfg.thm != "product" && cfg.thm != "double")
    throw std::invalid_argument("--thm takes 'product' or 'double'");
  const bool product = cfg.thm == "product";
  const std::string n1 = cfg.g.empty() ? (product ? "gaussian" : "fejer") : cfg.g;
  const std::string n2 = cfg.g2.empty() ? (product ? "gauss_weierstrass" : "gaussian") : cfg.g2;
  std::vector<Cell> row{cfg.thm, f.id, n1, n2, p};
  try {
    if (product) {
      const EqualityReport e = convolution_exchange_check(f, builtin_spec(n1), bv_builtin_spec(n2), p, tol);
      append_equality(row, e);
      for (Cell c : std::vector<Cell>{kNaN, kNaN, ""}) row.push_back(std::move(c));
      if (!e.pass) fail(r, "int (f*g1)^ g2 = int fhat g1hat g2 for " + f.id);
    } else {
      const DoubleKernelReport d = double_kernel_check(f, bv_builtin_spec(n1), builtin_spec(n2), p, tol);
      append_equality(row, d.equality);
      for (Cell c : std::vector<Cell>{d.variation, d.variation_bound, ""}) row.push_back(std::move(c));
      if (!d.equality.pass) fail(r, "int fhat (g1*g2) = int f g1hat g2hat for " + f.id);
      if (!d.variation_bound_holds) fail(r, "V(g1*g2) <= V(g1) ||g2||_1");
    }
  } catch (const HypothesisError& e) {
    reject(r, e.what());
    append_rejected(row);
    for (Cell c : std::vector<Cell>{kNaN, kNaN, std::string(e.what())}) row.push_back(std::move(c));
  }
  r.table.add(std::move(row));
  return r;
}

RunResult run_properties(const RunConfig& cfg) {
  RunResult r;
  r.table = Table({"f", "derivative_lp", "moment_derivative_lp", "derivative_bv", "moment_derivative_bv", "fhat_in_l1",
                   "fhat_in_bv", "closed_form_bv", "sufficient_only", "triggered"});
  for (const auto& name : f_list(cfg)) {
    const TestFunction f = builtin_spec(name);
    const PropositionReport pr = proposition_checker(f);
    std::string trig;
    for (const auto& t : pr.triggered) trig += (trig.empty() ? "" : ";") + t;
    r.table.add({f.id, pr.derivative_lp, pr.moment_derivative_lp, pr.derivative_bv, pr.moment_derivative_bv,
                 pr.fhat_in_l1, pr.fhat_in_bv, pr.closed_form_bv, pr.sufficient_only, trig});
  }
  return r;
}

}  // namespace

GridSpec parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3 && parts.size() != 4)
    throw std::invalid_argument("grid '" + spec + "' is not start:stop:count[:linear|log]");
  GridSpec g;
  g.start = parse_number(parts[0]);
  g.stop = parse_number(parts[1]);
  int count = 0;
  const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
  if (res.ec != std::errc() || res.ptr != parts[2].data() + parts[2].size())
    throw std::invalid_argument("grid count '" + parts[2] + "' is not an integer");
  g.count = count;
  if (parts.size() == 4) {
    if (parts[3] == "log") g.log = true;
    else if (parts[3] != "linear") throw std::invalid_argument("grid spacing must be linear or log");
  }
  if (!(g.start < g.stop)) throw std::invalid_argument("grid '" + spec + "' needs start < stop");
  if (g.count < 2) throw std::invalid_argument("grid '" + spec + "' needs count >= 2");
  if (g.log && !(g.start > 0.0)) throw std::invalid_argument("log grid '" + spec + "' needs start > 0");
  return g;
}

std::vector<double> grid_values(const GridSpec& g) {
  std::vector<double> v(g.count);
  const double a = g.log ? std::log(g.start) : g.start;
  const double b = g.log ? std::log(g.stop) : g.stop;
  for (int i = 0; i < g.count; ++i) {
    const double t = a + (b - a) * i / (g.count - 1);
    v[i] = g.log ? std::exp(t) : t;
  }
  v.front() = g.start;
  v.back() = g.stop;
  return v;
}

std::vector<double> parse_values(const std::string& spec) {
  if (spec.find(':') != std::string::npos) return grid_values(parse_grid(spec));
  std::vector<double> out;
  for (const auto& s : split(spec, ',')) out.push_back(parse_number(s));
  if (out.empty()) throw std::invalid_argument("empty value list");
  return out;
}

double default_tolerance(const std::string& sub) {
  if (sub == "constants") return 1e-10;
  if (sub == "psif" || sub == "integrate") return 1e-8;
  if (sub == "holder") return 1e-9;
  if (sub == "convolution-check") return 1e-5;
  return 1e-6;
}

RunResult execute(const RunConfig& cfg) {
  const double tol = cfg.tol.value_or(default_tolerance(cfg.subcommand));
  if (!(tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  const std::string& s = cfg.subcommand;
  if (s == "catalog") return run_catalog(cfg);
  if (s == "psif") return run_psif(cfg, tol);
  if (s == "holder") return run_holder(cfg, tol);
  if (s == "constants") return run_constants(cfg, tol);
  if (s == "integrate") return run_integrate(cfg, tol);
  if (s == "exchange") return run_exchange(cfg, tol);
  if (s == "invert") return run_invert(cfg, tol);
  if (s == "convolution-check") return run_convolution(cfg, tol);
  if (s == "properties") return run_properties(cfg);
  throw std::invalid_argument("unknown subcommand '" + s + "'");
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Fourier transforms of L^p functions through the primitive Psi_f"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::optional<double> tol;
  std::string format = "csv";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "absolute tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output file, stdout when omitted");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", cfg.seed, "seed for sampled checks");
  };
  auto fs = [&](CLI::App* sub, bool many) {
    auto* o = sub->add_option("--f", cfg.f, many ? "catalog functions, comma separated" : "catalog function");
    if (many) o->delimiter(',');
  };
  auto ps = [&](CLI::App* sub, bool many) {
    auto* o = sub->add_option("--p", cfg.p, many ? "exponents, comma separated" : "exponent p");
    if (many) o->delimiter(',');
  };

  common(app.add_subcommand("catalog", "list the function catalog"));
  auto* psif_cmd = app.add_subcommand("psif", "Psi_f on a grid of s");
  common(psif_cmd);
  fs(psif_cmd, false);
  ps(psif_cmd, false);
  psif_cmd->add_option("--sgrid", cfg.sgrid, "start:stop:count[:linear|log]");

  auto* holder = app.add_subcommand("holder", "growth and Hoelder bounds on sampled (s, h)");
  common(holder);
  fs(holder, true);
  ps(holder, true);

  auto* constants = app.add_subcommand("constants", "C_q against B_q");
  common(constants);
  constants->add_option("--qgrid", cfg.qgrid, "start:stop:count[:linear|log]");

  auto* integrate = app.add_subcommand("integrate", "int fhat g by parts against Psi_f");
  common(integrate);
  fs(integrate, false);
  ps(integrate, false);
  integrate->add_option("--g", cfg.g, "BV function");
  integrate->add_option("--range", cfg.range, "'a,b' or 'line'");

  auto* exchange = app.add_subcommand("exchange", "int fhat g = int f ghat");
  common(exchange);
  fs(exchange, false);
  ps(exchange, false);
  exchange->add_option("--g", cfg.g, "BV function");

  auto* invert = app.add_subcommand("invert", "L^p distance of f from f * psi_a");
  common(invert);
  fs(invert, false);
  ps(invert, false);
  invert->add_option("--kernel", cfg.kernel, "fejer, poisson, gauss_weierstrass or dirichlet");
  invert->add_option("--alist", cfg.alist, "comma separated a values or a grid");

  auto* conv = app.add_subcommand("convolution-check", "exchange identities with convolutions");
  common(conv);
  fs(conv, false);
  ps(conv, false);
  conv->add_option("--thm", cfg.thm, "product: int (f*g1)^ g2; double: int fhat (g1*g2)")
      ->check(CLI::IsMember({"product", "double"}));
  conv->add_option("--g", cfg.g, "g1");
  conv->add_option("--g2", cfg.g2, "g2");

  auto* props = app.add_subcommand("properties", "sufficient conditions for ghat in L^1 or BV");
  common(props);
  fs(props, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.tol = tol;

  RunResult result;
  try {
    cfg.format = parse_format(format);
    result = execute(cfg);
  } catch (const HypothesisError& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  try {
    emit_report(result.table, cfg.format, cfg.out);
  } catch (const ReportError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  for (const auto& m : result.messages) std::cerr << m << '\n';
  return result.pass ? 0 : 1;
}

}  // namespace lpf

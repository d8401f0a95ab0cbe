#include "lpfourier/bv_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpfourier/catalog.hpp"

namespace lpf {

namespace {

const Complex kI(0.0, 1.0);

ComplexFn constant_fn(Complex c) {
  return [c](double) { return c; };
}

BVPiece zero_piece() { return {constant_fn(0.0), constant_fn(0.0)}; }

std::string with_param(const std::string& name, double v, double fallback) {
  std::ostringstream os;
  os << name;
  if (v != fallback) os << ":" << v;
  return os.str();
}

double positive(const std::string& name, std::optional<double> param, double fallback) {
  const double v = param.value_or(fallback);
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(name + ": parameter must be positive");
  return v;
}

// |f| <= c |g| envelope for a bounded factor c.
DecayInfo scaled(const DecayInfo& d, double c) { return combine_decay(d, c, d, 0.0); }

// Rank of an envelope: compact beats exponential beats power.
double decay_strength(const DecayInfo& d) {
  if (std::holds_alternative<CompactSupport>(d)) return kInf;
  if (const auto* e = std::get_if<ExponentialTail>(&d)) return 1e6 + e->rate;
  return std::get<PowerTail>(d).exponent;
}

std::optional<DecayInfo> best_of(std::optional<DecayInfo> a, std::optional<DecayInfo> b) {
  if (!a) return b;
  if (!b) return a;
  return decay_strength(*b) > decay_strength(*a) ? b : a;
}

// |f g| given an envelope for one factor and a sup bound for the other.
std::optional<DecayInfo> product_envelope(const std::optional<DecayInfo>& df, double sup_g,
                                          const std::optional<DecayInfo>& dg, double sup_f) {
  std::optional<DecayInfo> a, b;
  if (df && std::isfinite(sup_g)) a = scaled(*df, sup_g);
  if (dg && std::isfinite(sup_f)) b = scaled(*dg, sup_f);
  return best_of(a, b);
}

std::shared_ptr<const TestFunction> shared(TestFunction f) {
  return std::make_shared<const TestFunction>(std::move(f));
}

Regularity smooth_regularity() {
  Regularity r;
  r.absolutely_continuous = true;
  r.vanishes_at_infinity = true;
  r.integrable = true;
  r.derivative_lp = LpRange::all();
  r.derivative_bv = true;
  return r;
}

TestFunction triangle_function(double a) {
  TestFunction f;
  f.id = with_param("fejer", a, 1.0);
  f.eval = [a](double t) -> Complex { return std::max(0.0, 1.0 - a * std::abs(t)); };
  f.decay = CompactSupport{-1.0 / a, 1.0 / a};
  f.lp = LpRange::all();
  f.singular_points = {-1.0 / a, 0.0, 1.0 / a};
  f.closed_form_fhat = [a](double t) -> Complex {
    const double x = t / (2.0 * a);
    if (std::abs(x) < 1e-4) return 1.0 / a * (1.0 - x * x / 3.0);
    const double s = std::sin(x);
    return 4.0 * a * s * s / (t * t);
  };
  f.g = smooth_regularity();
  f.h = smooth_regularity();
  f.sup_bound = 1.0;
  return f;
}

TestFunction two_sided_exponential(double a) {
  TestFunction f;
  f.id = with_param("poisson", a, 1.0);
  f.eval = [a](double t) -> Complex { return std::exp(-a * std::abs(t)); };
  f.decay = ExponentialTail{a, 1.0 / a, 1.0};
  f.lp = LpRange::all();
  f.singular_points = {0.0};
  f.closed_form_fhat = [a](double t) -> Complex { return 2.0 * a / (t * t + a * a); };
  f.g = smooth_regularity();
  f.h = smooth_regularity();
  f.sup_bound = 1.0;
  return f;
}

TestFunction scaled_gaussian(double a) {
  TestFunction f;
  f.id = with_param("gauss_weierstrass", a, 1.0);
  f.eval = [a](double t) -> Complex { return std::exp(-a * a * t * t); };
  f.decay = ExponentialTail{a, 1.0 / a, 1.0};
  f.lp = LpRange::all();
  f.closed_form_fhat = [a](double t) -> Complex { return std::sqrt(kPi) / a * std::exp(-t * t / (4.0 * a * a)); };
  f.g = smooth_regularity();
  f.h = smooth_regularity();
  f.sup_bound = 1.0;
  return f;
}

TestFunction box_function(double lo, double hi, const std::string& id) {
  TestFunction f;
  f.id = id;
  f.eval = [lo, hi](double t) -> Complex { return t > lo && t < hi ? 1.0 : (t == lo || t == hi ? 0.5 : 0.0); };
  f.decay = CompactSupport{lo, hi};
  f.lp = LpRange::all();
  f.singular_points = {lo, hi};
  f.closed_form_fhat = [lo, hi](double t) -> Complex {
    if (t == 0.0) return hi - lo;
    return (std::exp(-kI * t * lo) - std::exp(-kI * t * hi)) / (kI * t);
  };
  f.g.vanishes_at_infinity = true;
  f.g.integrable = true;
  f.h.vanishes_at_infinity = true;
  f.h.integrable = true;
  f.sup_bound = 1.0;
  return f;
}

BVFunction step_pieces(std::string id, double lo, double hi) {
  BVFunction g;
  g.id = std::move(id);
  g.breakpoints = {lo, hi};
  g.pieces = {zero_piece(), {constant_fn(1.0), constant_fn(0.0)}, zero_piece()};
  g.jumps = {{0.0, 0.5, 1.0}, {1.0, 0.5, 0.0}};
  g.decay = CompactSupport{lo, hi};
  g.derivative_decay = CompactSupport{lo, hi};
  g.sup_bound = 1.0;
  g.derivative_sup_bound = 0.0;
  g.vanishes_at_infinity = true;
  return g;
}

}  // namespace

std::size_t BVFunction::piece_index(double s) const {
  return static_cast<std::size_t>(std::upper_bound(breakpoints.begin(), breakpoints.end(), s) - breakpoints.begin());
}

Complex BVFunction::operator()(double s) const {
  const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), s);
  if (it != breakpoints.end() && *it == s) return jumps[static_cast<std::size_t>(it - breakpoints.begin())].at;
  return pieces[piece_index(s)].value(s);
}

Complex BVFunction::derivative(double s) const {
  if (std::binary_search(breakpoints.begin(), breakpoints.end(), s)) return 0.0;
  return pieces[piece_index(s)].derivative(s);
}

void validate(const BVFunction& g) {
  if (g.pieces.size() != g.breakpoints.size() + 1)
    throw std::invalid_argument(g.id + ": need one more piece than breakpoints");
  if (g.jumps.size() != g.breakpoints.size()) throw std::invalid_argument(g.id + ": need one jump per breakpoint");
  for (std::size_t i = 0; i < g.breakpoints.size(); ++i) {
    if (!std::isfinite(g.breakpoints[i])) throw std::invalid_argument(g.id + ": breakpoints must be finite");
    if (i > 0 && !(g.breakpoints[i - 1] < g.breakpoints[i]))
      throw std::invalid_argument(g.id + ": breakpoints must increase strictly");
  }
  for (const auto& p : g.pieces)
    if (!p.value || !p.derivative) throw std::invalid_argument(g.id + ": every piece needs value and derivative");
  if (g.decay) validate(*g.decay);
  if (g.derivative_decay) validate(*g.derivative_decay);
  for (std::size_t i = 0; i < g.breakpoints.size(); ++i) {
    const double b = g.breakpoints[i];
    const double h = 1e-7 * std::max(1.0, std::abs(b));
    const Complex l = g.pieces[i].value(b - h), r = g.pieces[i + 1].value(b + h);
    auto near = [h](Complex x, Complex want) {
      if (!is_finite(want) || !is_finite(x)) return true;
      return std::abs(x - want) <= 1e-4 * std::max(1.0, std::abs(want)) + 1e3 * h;
    };
    if (!near(l, g.jumps[i].left) || !near(r, g.jumps[i].right))
      throw std::invalid_argument(g.id + ": piece limits disagree with the stored jump at a breakpoint");
  }
}

BVFunction smooth_bv(std::string id, ComplexFn value, ComplexFn derivative) {
  BVFunction g;
  g.id = std::move(id);
  g.pieces = {{std::move(value), std::move(derivative)}};
  g.absolutely_continuous = true;
  return g;
}

BVFunction modulate(const BVFunction& g, double x) {
  if (x == 0.0) return g;
  BVFunction r = g;
  std::ostringstream id;
  id << "e^{i" << x << "s}" << g.id;
  r.id = id.str();
  for (auto& p : r.pieces) {
    const ComplexFn v = p.value, d = p.derivative;
    p.value = [v, x](double s) { return std::exp(kI * x * s) * v(s); };
    p.derivative = [v, d, x](double s) { return std::exp(kI * x * s) * (kI * x * v(s) + d(s)); };
  }
  for (std::size_t i = 0; i < r.breakpoints.size(); ++i) {
    const Complex e = std::exp(kI * x * r.breakpoints[i]);
    r.jumps[i] = {e * g.jumps[i].left, e * g.jumps[i].at, e * g.jumps[i].right};
  }
  const double ax = std::abs(x);
  if (g.decay && g.derivative_decay)
    r.derivative_decay = combine_decay(*g.decay, ax, *g.derivative_decay, 1.0);
  else
    r.derivative_decay.reset();
  r.derivative_sup_bound = ax * g.sup_bound + g.derivative_sup_bound;
  r.power_tail.reset();
  if (g.as_function) r.as_function = shared(modulate(*g.as_function, x));
  return r;
}

BVFunction product(const BVFunction& g1, const BVFunction& g2) {
  BVFunction r;
  r.id = g1.id + "*" + g2.id;
  std::vector<double> b = g1.breakpoints;
  b.insert(b.end(), g2.breakpoints.begin(), g2.breakpoints.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  r.breakpoints = b;
  for (std::size_t i = 0; i <= b.size(); ++i) {
    // the piece of each factor covering this interval
    double mid;
    if (b.empty())
      mid = 0.0;
    else if (i == 0)
      mid = b.front() - 1.0;
    else if (i == b.size())
      mid = b.back() + 1.0;
    else
      mid = 0.5 * (b[i - 1] + b[i]);
    const BVPiece p1 = g1.pieces[g1.piece_index(mid)], p2 = g2.pieces[g2.piece_index(mid)];
    r.pieces.push_back({[p1, p2](double s) { return p1.value(s) * p2.value(s); },
                        [p1, p2](double s) { return p1.derivative(s) * p2.value(s) + p1.value(s) * p2.derivative(s); }});
  }
  auto sides = [](const BVFunction& g, double s) -> BVJump {
    const auto it = std::lower_bound(g.breakpoints.begin(), g.breakpoints.end(), s);
    if (it != g.breakpoints.end() && *it == s) return g.jumps[static_cast<std::size_t>(it - g.breakpoints.begin())];
    const Complex v = g(s);
    return {v, v, v};
  };
  for (double s : b) {
    const BVJump j1 = sides(g1, s), j2 = sides(g2, s);
    r.jumps.push_back({j1.left * j2.left, j1.at * j2.at, j1.right * j2.right});
  }
  r.sup_bound = g1.sup_bound * g2.sup_bound;
  r.derivative_sup_bound = g1.derivative_sup_bound * g2.sup_bound + g1.sup_bound * g2.derivative_sup_bound;
  r.decay = product_envelope(g1.decay, g2.sup_bound, g2.decay, g1.sup_bound);
  const auto t1 = product_envelope(g1.derivative_decay, g2.sup_bound, g2.decay, g1.derivative_sup_bound);
  const auto t2 = product_envelope(g1.decay, g2.derivative_sup_bound, g2.derivative_decay, g1.sup_bound);
  if (t1 && t2) r.derivative_decay = combine_decay(*t1, 1.0, *t2, 1.0);
  r.absolutely_continuous = g1.absolutely_continuous && g2.absolutely_continuous;
  r.vanishes_at_infinity = (g1.vanishes_at_infinity && std::isfinite(g2.sup_bound)) ||
                           (g2.vanishes_at_infinity && std::isfinite(g1.sup_bound));
  return r;
}

BVFunction fejer_kernel(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("fejer: a must be positive");
  BVFunction g;
  g.id = with_param("fejer", a, 1.0);
  const double m = 1.0 / a;
  g.breakpoints = {-m, 0.0, m};
  g.pieces = {zero_piece(),
              {[a](double s) -> Complex { return 1.0 + a * s; }, constant_fn(a)},
              {[a](double s) -> Complex { return 1.0 - a * s; }, constant_fn(-a)},
              zero_piece()};
  g.jumps = {{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, {0.0, 0.0, 0.0}};
  g.decay = CompactSupport{-m, m};
  g.derivative_decay = CompactSupport{-m, m};
  g.sup_bound = 1.0;
  g.derivative_sup_bound = a;
  g.absolutely_continuous = true;
  g.vanishes_at_infinity = true;
  g.as_function = shared(triangle_function(a));
  return g;
}

BVFunction poisson_kernel(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("poisson: a must be positive");
  BVFunction g;
  g.id = with_param("poisson", a, 1.0);
  g.breakpoints = {0.0};
  g.pieces = {{[a](double s) -> Complex { return std::exp(a * s); }, [a](double s) -> Complex { return a * std::exp(a * s); }},
              {[a](double s) -> Complex { return std::exp(-a * s); }, [a](double s) -> Complex { return -a * std::exp(-a * s); }}};
  g.jumps = {{1.0, 1.0, 1.0}};
  g.decay = ExponentialTail{a, 1.0 / a, 1.0};
  g.derivative_decay = ExponentialTail{a, 1.0 / a, a};
  g.sup_bound = 1.0;
  g.derivative_sup_bound = a;
  g.absolutely_continuous = true;
  g.vanishes_at_infinity = true;
  g.as_function = shared(two_sided_exponential(a));
  return g;
}

BVFunction gauss_weierstrass_kernel(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("gauss_weierstrass: a must be positive");
  BVFunction g = smooth_bv(
      with_param("gauss_weierstrass", a, 1.0), [a](double s) -> Complex { return std::exp(-a * a * s * s); },
      [a](double s) -> Complex { return -2.0 * a * a * s * std::exp(-a * a * s * s); });
  // a^2 s^2 >= a|s| past 1/a; past 2/a, 2a^2 s e^{-a^2 s^2} <= 2a^2 s e^{-2as} <= (2a/e) e^{-as}
  g.decay = ExponentialTail{a, 1.0 / a, 1.0};
  g.derivative_decay = ExponentialTail{a, 2.0 / a, 2.0 * a / std::exp(1.0)};
  g.sup_bound = 1.0;
  g.derivative_sup_bound = a * std::sqrt(2.0 / std::exp(1.0));
  g.vanishes_at_infinity = true;
  g.as_function = shared(scaled_gaussian(a));
  return g;
}

BVFunction dirichlet_kernel(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("dirichlet: a must be positive");
  BVFunction g = step_pieces(with_param("dirichlet", a, 1.0), -1.0 / a, 1.0 / a);
  g.as_function = shared(box_function(-1.0 / a, 1.0 / a, g.id));
  return g;
}

const std::vector<BVEntry>& bv_entries() {
  static const std::vector<BVEntry> entries = {
      {"constant", "g = 1", std::nullopt},
      {"step", "chi_[0,inf), value 1/2 at 0", std::nullopt},
      {"indicator_01", "chi_[0,1], value 1/2 at the endpoints", std::nullopt},
      {"ramp", "g(s) = s", std::nullopt},
      {"power_tail", "s^(-alpha) for s > 1, zero otherwise", 0.8},
      {"sinc", "sin(s)/s (not of bounded variation)", std::nullopt},
      {"gaussian", "exp(-s^2)", std::nullopt},
      {"fejer", "(1 - a|s|)_+", 1.0},
      {"poisson", "exp(-a|s|)", 1.0},
      {"gauss_weierstrass", "exp(-a^2 s^2)", 1.0},
      {"dirichlet", "chi_[-1/a,1/a]", 1.0},
      {"singular_power", "s^(-gamma) for s > 0, zero otherwise", 0.25},
  };
  return entries;
}

BVFunction bv_builtin(const std::string& name, std::optional<double> param) {
  if (name == "constant") {
    BVFunction g = smooth_bv("constant", constant_fn(1.0), constant_fn(0.0));
    g.derivative_decay = CompactSupport{-1.0, 1.0};
    g.sup_bound = 1.0;
    g.derivative_sup_bound = 0.0;
    return g;
  }
  if (name == "step") {
    BVFunction g;
    g.id = "step";
    g.breakpoints = {0.0};
    g.pieces = {zero_piece(), {constant_fn(1.0), constant_fn(0.0)}};
    g.jumps = {{0.0, 0.5, 1.0}};
    g.derivative_decay = CompactSupport{-1.0, 1.0};
    g.sup_bound = 1.0;
    g.derivative_sup_bound = 0.0;
    return g;
  }
  if (name == "indicator_01") {
    BVFunction g = step_pieces("indicator_01", 0.0, 1.0);
    g.as_function = shared(box_function(0.0, 1.0, "indicator_01"));
    return g;
  }
  if (name == "ramp") {
    BVFunction g = smooth_bv("ramp", [](double s) -> Complex { return s; }, constant_fn(1.0));
    g.derivative_sup_bound = 1.0;
    return g;
  }
  if (name == "power_tail") {
    const double alpha = param.value_or(0.8);
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("power_tail: need 0 < alpha < 1");
    BVFunction g;
    g.id = with_param("power_tail", alpha, 0.8);
    g.breakpoints = {1.0};
    g.pieces = {zero_piece(),
                {[alpha](double s) -> Complex { return std::pow(s, -alpha); },
                 [alpha](double s) -> Complex { return -alpha * std::pow(s, -alpha - 1.0); }}};
    g.jumps = {{0.0, 0.0, 1.0}};  // g(1) = 0: the power starts strictly after 1
    g.decay = PowerTail{alpha, 1.0, 1.0};
    g.derivative_decay = PowerTail{alpha + 1.0, 1.0, alpha};
    g.power_tail = PowerDerivativeTail{1.0, alpha + 1.0, -alpha, 0.0};
    g.sup_bound = 1.0;
    g.derivative_sup_bound = alpha;
    g.vanishes_at_infinity = true;
    g.as_function = shared(builtin("pow_tail", alpha));
    return g;
  }
  if (name == "sinc") {
    BVFunction g = smooth_bv(
        "sinc", [](double s) -> Complex { return s == 0.0 ? 1.0 : std::sin(s) / s; },
        [](double s) -> Complex {
          if (std::abs(s) < 1e-4) return -s / 3.0;
          return (s * std::cos(s) - std::sin(s)) / (s * s);
        });
    g.decay = PowerTail{1.0, 1.0, 1.0};
    g.derivative_decay = PowerTail{1.0, 1.0, 2.0};  // |cos s/s - sin s/s^2| <= 2/s
    g.sup_bound = 1.0;
    g.derivative_sup_bound = 0.5;
    g.vanishes_at_infinity = true;
    g.as_function = shared(builtin("sinc"));
    return g;
  }
  if (name == "gaussian") {
    BVFunction g = smooth_bv(
        "gaussian", [](double s) -> Complex { return std::exp(-s * s); },
        [](double s) -> Complex { return -2.0 * s * std::exp(-s * s); });
    g.decay = ExponentialTail{4.0, 4.0, 1.0};
    g.derivative_decay = ExponentialTail{4.0, 5.0, 1.0};
    g.sup_bound = 1.0;
    g.derivative_sup_bound = std::sqrt(2.0 / std::exp(1.0));
    g.vanishes_at_infinity = true;
    g.as_function = shared(builtin("gaussian"));
    return g;
  }
  if (name == "fejer") return fejer_kernel(positive(name, param, 1.0));
  if (name == "poisson") return poisson_kernel(positive(name, param, 1.0));
  if (name == "gauss_weierstrass") return gauss_weierstrass_kernel(positive(name, param, 1.0));
  if (name == "dirichlet") return dirichlet_kernel(positive(name, param, 1.0));
  if (name == "singular_power") {
    const double gamma = param.value_or(0.25);
    if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("singular_power: need 0 < gamma < 1");
    BVFunction g;
    g.id = with_param("singular_power", gamma, 0.25);
    g.breakpoints = {0.0};
    g.pieces = {zero_piece(),
                {[gamma](double s) -> Complex { return std::pow(s, -gamma); },
                 [gamma](double s) -> Complex { return -gamma * std::pow(s, -gamma - 1.0); }}};
    g.jumps = {{0.0, kInf, kInf}};
    g.decay = PowerTail{gamma, 1.0, 1.0};
    g.derivative_decay = PowerTail{gamma + 1.0, 1.0, gamma};
    g.power_tail = PowerDerivativeTail{1.0, gamma + 1.0, -gamma, 0.0};
    g.singular_at_zero = SingularAtZero{gamma, 1.0, gamma};
    g.derivative_sup_bound = kInf;
    g.vanishes_at_infinity = true;
    return g;
  }
  std::ostringstream os;
  os << "unknown BV function '" << name << "'; available:";
  for (const auto& e : bv_entries()) os << " " << e.name;
  throw std::invalid_argument(os.str());
}

BVFunction bv_builtin_spec(const std::string& spec) {
  const auto [name, param] = split_spec(spec);
  return bv_builtin(name, param);
}

}  // namespace lpf

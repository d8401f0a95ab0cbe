#include "lpfourier/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "lpfourier/special_functions.hpp"

namespace lpf {

namespace {

const Complex kI(0.0, 1.0);

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

Regularity smooth_everywhere() {
  Regularity r;
  r.absolutely_continuous = true;
  r.vanishes_at_infinity = true;
  r.integrable = true;
  r.derivative_lp = LpRange::all();
  r.derivative_bv = true;
  return r;
}

TailComponent pure_power(double constant, double exponent, std::vector<TailMode> modes) {
  TailComponent c;
  c.amplitude = [constant, exponent](double t) { return constant * std::pow(t, -exponent); };
  c.bound_constant = constant;
  c.bound_exponent = exponent;
  c.pure_power = true;
  c.modes = std::move(modes);
  return c;
}

TestFunction make_indicator() {
  TestFunction f;
  f.id = "indicator";
  f.eval = [](double t) -> Complex {
    const double a = std::abs(t);
    return a < 1.0 ? 1.0 : (a == 1.0 ? 0.5 : 0.0);
  };
  f.decay = CompactSupport{-1.0, 1.0};
  f.lp = LpRange::all();
  f.known_lp_norm = [](double p) { return std::pow(2.0, 1.0 / p); };
  f.singular_points = {-1.0, 1.0};
  f.closed_form_psif = [](double s) -> Complex { return 2.0 * si(s); };
  f.closed_form_fhat = [](double s) -> Complex { return s == 0.0 ? 2.0 : 2.0 * std::sin(s) / s; };
  f.g.vanishes_at_infinity = true;
  f.g.integrable = true;
  f.h.vanishes_at_infinity = true;
  f.h.integrable = true;
  f.sup_bound = 1.0;
  return f;
}

TestFunction make_gaussian() {
  TestFunction f;
  f.id = "gaussian";
  f.eval = [](double t) -> Complex { return std::exp(-t * t); };
  f.decay = ExponentialTail{4.0, 4.0, 1.0};  // t^2 >= 4t for t >= 4
  f.lp = LpRange::all();
  f.known_lp_norm = [](double p) { return std::pow(std::sqrt(kPi / p), 1.0 / p); };
  f.closed_form_psif = [](double s) -> Complex { return kPi * erf(0.5 * s); };
  f.closed_form_fhat = [](double s) -> Complex { return std::sqrt(kPi) * std::exp(-0.25 * s * s); };
  f.fhat_bv_closed_form = true;
  f.g = smooth_everywhere();
  f.h = smooth_everywhere();
  f.sup_bound = 1.0;

  auto d = std::make_shared<TestFunction>();
  d->id = "gaussian'";
  d->eval = [](double t) -> Complex { return -2.0 * t * std::exp(-t * t); };
  d->decay = ExponentialTail{4.0, 5.0, 1.0};
  d->lp = LpRange::all();
  d->closed_form_psif = [](double s) -> Complex { return 2.0 * kI * std::sqrt(kPi) * (1.0 - std::exp(-0.25 * s * s)); };
  d->closed_form_fhat = [](double s) -> Complex { return kI * s * std::sqrt(kPi) * std::exp(-0.25 * s * s); };
  d->g = smooth_everywhere();
  d->h = smooth_everywhere();
  d->sup_bound = std::sqrt(2.0) * std::exp(-0.5);
  f.derivative = d;
  return f;
}

TestFunction make_heat(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("heat: parameter a must be positive");
  const double norm = 1.0 / std::sqrt(4.0 * kPi * a);
  const double ra = std::sqrt(a);
  TestFunction f;
  std::ostringstream id;
  id << "heat";
  if (a != 1.0) id << ":" << a;
  f.id = id.str();
  f.eval = [a, norm](double t) -> Complex { return norm * std::exp(-t * t / (4.0 * a)); };
  f.decay = ExponentialTail{1.0 / ra, 4.0 * ra, norm};
  f.lp = LpRange::all();
  f.known_lp_norm = [a, norm](double p) { return norm * std::pow(std::sqrt(4.0 * kPi * a / p), 1.0 / p); };
  f.closed_form_psif = [a, ra](double s) -> Complex { return 0.5 * std::sqrt(kPi / a) * erf(ra * s); };
  f.closed_form_fhat = [a](double s) -> Complex { return std::exp(-a * s * s); };
  f.fhat_bv_closed_form = true;
  f.g = smooth_everywhere();
  f.h = smooth_everywhere();
  f.sup_bound = norm;

  auto d = std::make_shared<TestFunction>();
  d->id = f.id + "'";
  d->eval = [a, norm](double t) -> Complex { return -t / (2.0 * a) * norm * std::exp(-t * t / (4.0 * a)); };
  d->decay = ExponentialTail{1.0 / ra, 8.0 * ra, norm};
  d->lp = LpRange::all();
  d->closed_form_psif = [a](double s) -> Complex { return kI * (1.0 - std::exp(-a * s * s)) / (2.0 * a); };
  d->closed_form_fhat = [a](double s) -> Complex { return kI * s * std::exp(-a * s * s); };
  d->g = smooth_everywhere();
  d->h = smooth_everywhere();
  d->sup_bound = norm / std::sqrt(2.0 * a) * std::exp(-0.5);
  f.derivative = d;
  return f;
}

TestFunction make_abs_pow(double p, bool odd) {
  if (odd ? !(p >= 1.0) : !(p > 1.0))
    throw std::invalid_argument(odd ? "abs_pow_odd: need p >= 1" : "abs_pow: need p > 1 (the even extension diverges at p = 1)");
  const double e = 1.0 / p;
  TestFunction f;
  std::ostringstream id;
  id << (odd ? "abs_pow_odd" : "abs_pow");
  if (p != (odd ? 1.0 : 2.0)) id << ":" << p;
  f.id = id.str();
  f.eval = [e, odd](double t) -> Complex {
    if (t == 0.0) return kInf;
    const double v = std::pow(std::abs(t), -e);
    return odd && t < 0.0 ? -v : v;
  };
  f.decay = PowerTail{e, 1.0, 1.0};
  f.lp = LpRange::none();  // the point of the example: in no L^p space
  f.psif_without_lp = true;
  f.singular_points = {0.0};
  const double sign_neg = odd ? -1.0 : 1.0;
  OscillatoryTail tail;
  tail.onset = 1.0;
  tail.positive.push_back(pure_power(1.0, e, {{0.0, 1.0}}));
  tail.negative.push_back(pure_power(1.0, e, {{0.0, sign_neg}}));
  f.tail = tail;
  if (odd) {
    const double k = abs_pow_cosine_constant(p);
    f.closed_form_psif = [k, e](double s) -> Complex { return -2.0 * kI * std::pow(std::abs(s), e) * k; };
  } else {
    const double k = abs_pow_sine_constant(p);
    f.closed_form_psif = [k, e](double s) -> Complex { return 2.0 * sgn(s) * std::pow(std::abs(s), e) * k; };
  }
  f.g.vanishes_at_infinity = true;
  return f;
}

TestFunction make_sinc() {
  TestFunction f;
  f.id = "sinc";
  f.eval = [](double t) -> Complex { return t == 0.0 ? 1.0 : std::sin(t) / t; };
  f.decay = PowerTail{1.0, 1.0, 1.0};
  f.lp = LpRange::above(1.0, false);
  f.known_lp_norm = [](double p) -> double { return p == 2.0 ? std::sqrt(kPi) : std::nan(""); };
  f.closed_form_fhat = [](double s) -> Complex {
    const double a = std::abs(s);
    return a < 1.0 ? kPi : (a == 1.0 ? kPi / 2 : 0.0);
  };
  f.closed_form_psif = [](double s) -> Complex { return kPi * std::clamp(s, -1.0, 1.0); };
  f.fhat_bv_closed_form = true;
  f.g.absolutely_continuous = true;
  f.g.vanishes_at_infinity = true;
  f.g.integrable = false;
  f.g.derivative_lp = LpRange::above(1.0, false);
  f.g.derivative_bv = true;
  f.h.absolutely_continuous = true;  // h = sin x: neither integrable nor vanishing
  f.h.derivative_lp = LpRange::none();
  f.sup_bound = 1.0;
  f.frequency = 1.0;
  OscillatoryTail tail;
  tail.onset = 1.0;
  const Complex c = 1.0 / (2.0 * kI);
  tail.positive.push_back(pure_power(1.0, 1.0, {{1.0, c}, {-1.0, -c}}));
  tail.negative.push_back(pure_power(1.0, 1.0, {{1.0, c}, {-1.0, -c}}));
  f.tail = tail;
  f.periodic = PeriodicTail{kPi, 1.0, 2.0 * kPi, [](double t) -> Complex { return std::sin(t); },
                            [](double t) -> Complex { return std::sin(t); }};
  return f;
}

TestFunction make_pow_tail(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("pow_tail: need 0 < alpha < 1");
  TestFunction f;
  std::ostringstream id;
  id << "pow_tail";
  if (alpha != 0.8) id << ":" << alpha;
  f.id = id.str();
  f.eval = [alpha](double t) -> Complex { return t > 1.0 ? std::pow(t, -alpha) : (t == 1.0 ? 0.5 : 0.0); };
  f.decay = PowerTail{alpha, 1.0, 1.0};
  f.lp = LpRange::above(1.0 / alpha, false);
  f.known_lp_norm = [alpha](double p) { return std::pow(1.0 / (alpha * p - 1.0), 1.0 / p); };
  f.singular_points = {1.0};
  OscillatoryTail tail;
  tail.onset = 1.0;
  tail.positive.push_back(pure_power(1.0, alpha, {{0.0, 1.0}}));
  f.tail = tail;
  f.g.vanishes_at_infinity = true;
  f.h.derivative_lp = LpRange::none();
  f.sup_bound = 1.0;
  return f;
}

TestFunction make_remark_piecewise(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("remark_piecewise: need 0 < alpha < 1");
  TestFunction f;
  std::ostringstream id;
  id << "remark_piecewise";
  if (alpha != 0.6) id << ":" << alpha;
  f.id = id.str();
  f.eval = [alpha](double x) -> Complex {
    if (x <= 0.0) return 0.0;
    if (x <= 1.0) return std::pow(x, -alpha);
    return std::exp(1.0 - x);
  };
  f.decay = ExponentialTail{1.0, 1.0, std::exp(1.0)};
  f.lp = LpRange::below(1.0 / alpha, false);
  f.known_lp_norm = [alpha](double p) { return std::pow(1.0 / (1.0 - alpha * p) + 1.0 / p, 1.0 / p); };
  f.singular_points = {0.0, 1.0};
  // g jumps to infinity at 0, so it is not absolutely continuous
  f.g.vanishes_at_infinity = true;
  f.g.integrable = true;
  // h(x) = x^{1-alpha} on (0,1], x e^{1-x} beyond: continuous, h' ~ x^{-alpha} near 0
  f.h.absolutely_continuous = true;
  f.h.vanishes_at_infinity = true;
  f.h.integrable = true;
  f.h.derivative_lp = LpRange::below(1.0 / alpha, false);
  f.h.derivative_bv = false;  // unbounded near 0
  return f;
}

TestFunction make_fejer_psi(double a) {
  TestFunction f;
  std::ostringstream id;
  id << "fejer_psi";
  if (a != 1.0) id << ":" << a;
  f.id = id.str();
  f.eval = [a](double t) -> Complex {
    const double x = t / (2.0 * a);
    if (std::abs(x) < 1e-4) return 1.0 / (2.0 * kPi * a) * (1.0 - x * x / 3.0);
    const double s = std::sin(x);
    return 2.0 * a * s * s / (kPi * t * t);
  };
  f.decay = PowerTail{2.0, a, 2.0 * a / kPi};
  f.lp = LpRange::all();
  f.known_lp_norm = [a](double p) { return p == 1.0 ? 1.0 : (p == 2.0 ? 1.0 / std::sqrt(3.0 * kPi * a) : std::nan("")); };
  f.closed_form_fhat = [a](double s) -> Complex { return std::max(0.0, 1.0 - a * std::abs(s)); };
  f.closed_form_psif = [a](double s) -> Complex {
    const double m = 1.0 / a;
    if (std::abs(s) >= m) return sgn(s) / (2.0 * a);
    return s - a * s * std::abs(s) / 2.0;
  };
  f.fhat_bv_closed_form = true;
  f.g = smooth_everywhere();
  f.h.absolutely_continuous = true;  // h ~ 1/x: not integrable
  f.h.vanishes_at_infinity = true;
  f.h.derivative_lp = LpRange::all();
  f.h.derivative_bv = true;
  f.sup_bound = 1.0 / (2.0 * kPi * a);
  f.frequency = 1.0 / a;
  OscillatoryTail tail;
  tail.onset = a;
  tail.positive.push_back(pure_power(a / kPi, 2.0, {{0.0, 1.0}, {1.0 / a, -0.5}, {-1.0 / a, -0.5}}));
  tail.negative = tail.positive;
  f.tail = tail;
  auto per = [a](double t) -> Complex {
    const double s = std::sin(t / (2.0 * a));
    return 2.0 * a * s * s / kPi;
  };
  f.periodic = PeriodicTail{2.0 * kPi * a, 2.0, 2.0 * kPi * a, per, per};
  return f;
}

TestFunction make_poisson_psi(double a) {
  TestFunction f;
  std::ostringstream id;
  id << "poisson_psi";
  if (a != 1.0) id << ":" << a;
  f.id = id.str();
  f.eval = [a](double t) -> Complex { return a / (kPi * (t * t + a * a)); };
  f.decay = PowerTail{2.0, a, a / kPi};
  f.lp = LpRange::all();
  f.known_lp_norm = [a](double p) {
    // (a/pi)^p a^{1-2p} sqrt(pi) Gamma(p-1/2)/Gamma(p)
    const double v = std::pow(a / kPi, p) * std::pow(a, 1.0 - 2.0 * p) * std::sqrt(kPi) *
                     std::exp(std::lgamma(p - 0.5) - std::lgamma(p));
    return std::pow(v, 1.0 / p);
  };
  f.closed_form_fhat = [a](double s) -> Complex { return std::exp(-a * std::abs(s)); };
  f.closed_form_psif = [a](double s) -> Complex { return sgn(s) * (1.0 - std::exp(-a * std::abs(s))) / a; };
  f.fhat_bv_closed_form = true;
  f.g = smooth_everywhere();
  f.h.absolutely_continuous = true;
  f.h.vanishes_at_infinity = true;
  f.h.derivative_lp = LpRange::all();
  f.h.derivative_bv = true;
  f.sup_bound = 1.0 / (kPi * a);
  OscillatoryTail tail;
  tail.onset = a;
  TailComponent c;
  c.amplitude = [a](double t) { return a / (kPi * (t * t + a * a)); };
  c.bound_constant = a / kPi;
  c.bound_exponent = 2.0;
  c.modes = {{0.0, 1.0}};
  tail.positive.push_back(c);
  tail.negative.push_back(c);
  f.tail = tail;
  return f;
}

TestFunction make_gw_psi(double a) {
  TestFunction f;
  std::ostringstream id;
  id << "gauss_weierstrass_psi";
  if (a != 1.0) id << ":" << a;
  f.id = id.str();
  const double norm = 1.0 / (2.0 * std::sqrt(kPi) * a);
  f.eval = [a, norm](double t) -> Complex { return norm * std::exp(-t * t / (4.0 * a * a)); };
  f.decay = ExponentialTail{1.0 / a, 4.0 * a, norm};
  f.lp = LpRange::all();
  f.known_lp_norm = [a, norm](double p) { return norm * std::pow(std::sqrt(4.0 * kPi * a * a / p), 1.0 / p); };
  f.closed_form_fhat = [a](double s) -> Complex { return std::exp(-a * a * s * s); };
  f.closed_form_psif = [a](double s) -> Complex { return std::sqrt(kPi) / (2.0 * a) * erf(a * s); };
  f.fhat_bv_closed_form = true;
  f.g = smooth_everywhere();
  f.h = smooth_everywhere();
  f.sup_bound = norm;
  return f;
}

TestFunction make_dirichlet_psi(double a) {
  TestFunction f;
  std::ostringstream id;
  id << "dirichlet_psi";
  if (a != 1.0) id << ":" << a;
  f.id = id.str();
  f.eval = [a](double t) -> Complex { return t == 0.0 ? 1.0 / (kPi * a) : std::sin(t / a) / (kPi * t); };
  f.decay = PowerTail{1.0, a, 1.0 / kPi};
  f.lp = LpRange::above(1.0, false);
  f.known_lp_norm = [a](double p) { return p == 2.0 ? 1.0 / std::sqrt(kPi * a) : std::nan(""); };
  f.closed_form_fhat = [a](double s) -> Complex {
    const double m = 1.0 / a, x = std::abs(s);
    return x < m ? 1.0 : (x == m ? 0.5 : 0.0);
  };
  f.closed_form_psif = [a](double s) -> Complex { return std::clamp(s, -1.0 / a, 1.0 / a); };
  f.fhat_bv_closed_form = true;
  f.g.absolutely_continuous = true;
  f.g.vanishes_at_infinity = true;
  f.g.derivative_lp = LpRange::above(1.0, false);
  f.g.derivative_bv = true;
  f.h.absolutely_continuous = true;
  f.sup_bound = 1.0 / (kPi * a);
  f.frequency = 1.0 / a;
  OscillatoryTail tail;
  tail.onset = a;
  const Complex c = 1.0 / (2.0 * kI);
  tail.positive.push_back(pure_power(1.0 / kPi, 1.0, {{1.0 / a, c}, {-1.0 / a, -c}}));
  tail.negative = tail.positive;
  f.tail = tail;
  auto per = [a](double t) -> Complex { return std::sin(t / a) / kPi; };
  f.periodic = PeriodicTail{kPi * a, 1.0, 2.0 * kPi * a, per, per};
  return f;
}

double positive_parameter(const std::string& name, std::optional<double> param, double fallback) {
  const double v = param.value_or(fallback);
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(name + ": parameter must be positive");
  return v;
}

}  // namespace

double abs_pow_sine_constant(double p) {
  const double e = 1.0 / p;
  QuadratureResult r =
      integrate_oscillatory([e](double t) { return std::pow(t, -1.0 - e); }, 1.0, 0.0, 1e-12);
  return r.value.real();
}

double abs_pow_cosine_constant(double p) {
  const double e = 1.0 / p;
  QuadratureResult head = integrate_finite(
      [e](double t) {
        // 1 - cos t = 2 sin^2(t/2) avoids cancellation near 0
        const double s = std::sin(0.5 * t);
        return 2.0 * s * s * std::pow(t, -1.0 - e);
      },
      0.0, kPi, 1e-13);
  const double power = p * std::pow(kPi, -e);
  QuadratureResult osc =
      integrate_oscillatory([e](double t) { return std::pow(t, -1.0 - e); }, 1.0, kPi, 1e-12, Oscillator::Cosine);
  return head.value.real() + power - osc.value.real();
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"indicator", "characteristic function of (-1,1)", std::nullopt},
      {"gaussian", "exp(-t^2)", std::nullopt},
      {"heat", "heat kernel exp(-t^2/(4a))/sqrt(4 pi a)", 1.0},
      {"abs_pow", "|t|^(-1/p), even; in no L^p space", 2.0},
      {"abs_pow_odd", "sgn(t)|t|^(-1/p); in no L^p space", 1.0},
      {"sinc", "sin(t)/t", std::nullopt},
      {"pow_tail", "t^(-alpha) on (1,inf), zero elsewhere", 0.8},
      {"remark_piecewise", "t^(-alpha) on (0,1], exp(1-t) beyond, zero for t <= 0", 0.6},
      {"fejer_psi", "2a sin^2(t/2a)/(pi t^2)", 1.0},
      {"poisson_psi", "a/(pi (t^2+a^2))", 1.0},
      {"gauss_weierstrass_psi", "exp(-t^2/(4a^2))/(2 sqrt(pi) a)", 1.0},
      {"dirichlet_psi", "sin(t/a)/(pi t)", 1.0},
  };
  return entries;
}

TestFunction builtin(const std::string& name, std::optional<double> param) {
  if (name == "indicator") return make_indicator();
  if (name == "gaussian") return make_gaussian();
  if (name == "heat") return make_heat(positive_parameter(name, param, 1.0));
  if (name == "abs_pow") return make_abs_pow(param.value_or(2.0), false);
  if (name == "abs_pow_odd") return make_abs_pow(param.value_or(1.0), true);
  if (name == "sinc") return make_sinc();
  if (name == "pow_tail") return make_pow_tail(param.value_or(0.8));
  if (name == "remark_piecewise") return make_remark_piecewise(param.value_or(0.6));
  if (name == "fejer_psi") return make_fejer_psi(positive_parameter(name, param, 1.0));
  if (name == "poisson_psi") return make_poisson_psi(positive_parameter(name, param, 1.0));
  if (name == "gauss_weierstrass_psi") return make_gw_psi(positive_parameter(name, param, 1.0));
  if (name == "dirichlet_psi") return make_dirichlet_psi(positive_parameter(name, param, 1.0));
  std::ostringstream os;
  os << "unknown test function '" << name << "'; available:";
  for (const auto& e : catalog_entries()) os << " " << e.name;
  throw std::invalid_argument(os.str());
}

std::pair<std::string, std::optional<double>> split_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return {spec, std::nullopt};
  const std::string arg = spec.substr(colon + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != arg.size() || arg.empty())
    throw std::invalid_argument("bad parameter '" + arg + "' in spec '" + spec + "'");
  return {spec.substr(0, colon), v};
}

TestFunction builtin_spec(const std::string& spec) {
  const auto [name, param] = split_spec(spec);
  return builtin(name, param);
}

std::vector<std::string> catalog_listing() {
  std::vector<std::string> lines;
  for (const auto& e : catalog_entries()) {
    const TestFunction f = builtin(e.name);
    std::ostringstream os;
    os << f.id << "\tLp=" << f.lp.describe() << "\toracles=";
    std::vector<std::string> o;
    if (f.closed_form_psif) o.push_back("psif");
    if (f.closed_form_fhat) o.push_back("fhat");
    if (f.known_lp_norm) o.push_back("lp_norm");
    if (f.derivative) o.push_back("derivative");
    if (o.empty()) o.push_back("none");
    for (std::size_t i = 0; i < o.size(); ++i) os << (i ? "," : "") << o[i];
    os << "\t" << e.description;
    lines.push_back(os.str());
  }
  return lines;
}

}  // namespace lpf

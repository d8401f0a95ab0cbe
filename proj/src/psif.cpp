#include "lpfourier/psif.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>

#include "lpfourier/lp_norm.hpp"
#include "lpfourier/parallel.hpp"

namespace lpf {

namespace {

const Complex kI(0.0, 1.0);

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// K(t) = sum coefficient e^{i frequency t} weight(t) for t >= onset.
struct KernelTerm {
  Complex coefficient;
  double frequency;
  RealFn weight;
  double weight_constant;
  double weight_exponent;
  bool weight_pure;
};

// An integration kernel with its large-|t| expansion on both sides;
// `negative` describes t -> K(-t).
struct KernelModel {
  ComplexFn eval;
  double onset = 0.0;
  double tail_constant = 2.0;  // |K(t)| <= tail_constant / |t| for |t| >= onset
  double frequency = 0.0;
  std::vector<KernelTerm> positive;
  std::vector<KernelTerm> negative;
  bool plain = false;  // K = u_s
  double s = 0.0;
};

RealFn inverse_power(double k) {
  return [k](double t) { return std::pow(t, -k); };
}

KernelModel plain_kernel(double s) {
  KernelModel k;
  k.eval = [s](double t) { return u_kernel(s, t); };
  k.frequency = std::abs(s);
  k.plain = true;
  k.s = s;
  const Complex c = 1.0 / kI;
  RealFn w = [](double t) { return 1.0 / t; };
  k.positive = {{c, 0.0, w, 1.0, 1.0, true}, {-c, -s, w, 1.0, 1.0, true}};
  k.negative = {{-c, 0.0, w, 1.0, 1.0, true}, {c, s, w, 1.0, 1.0, true}};
  return k;
}

// u_s(t + a)
KernelModel shifted_kernel(double s, double a) {
  KernelModel k;
  k.eval = [s, a](double t) { return u_kernel(s, t + a); };
  k.onset = 2.0 * std::abs(a);
  k.tail_constant = 4.0;
  k.frequency = std::abs(s);
  k.s = s;
  const Complex c = 1.0 / kI;
  const Complex phase = std::exp(-kI * s * a);
  RealFn wp = [a](double t) { return 1.0 / (t + a); };
  RealFn wn = [a](double t) { return 1.0 / (t - a); };
  k.positive = {{c, 0.0, wp, 2.0, 1.0, false}, {-c * phase, -s, wp, 2.0, 1.0, false}};
  k.negative = {{-c, 0.0, wn, 2.0, 1.0, false}, {c * phase, s, wn, 2.0, 1.0, false}};
  return k;
}

// -u_s'(t) = (1 - e^{-ist})/(it^2) - (s/t) e^{-ist}
KernelModel derivative_kernel(double s) {
  KernelModel k;
  k.eval = [s](double t) { return -u_kernel_deriv(1, s, t); };
  k.onset = 1.0;
  k.tail_constant = 2.0 + std::abs(s);
  k.frequency = std::abs(s);
  k.s = s;
  const Complex c = 1.0 / kI;
  RealFn w2 = inverse_power(2.0);
  RealFn w1 = inverse_power(1.0);
  k.positive = {{c, 0.0, w2, 1.0, 2.0, true}, {-c, -s, w2, 1.0, 2.0, true}, {-s, -s, w1, 1.0, 1.0, true}};
  k.negative = {{c, 0.0, w2, 1.0, 2.0, true}, {-c, s, w2, 1.0, 2.0, true}, {s, s, w1, 1.0, 1.0, true}};
  return k;
}

void require_integrable(const TestFunction& f) {
  if (f.lp.empty && !f.psif_without_lp)
    throw HypothesisError("f in L^p", f.id + " declares no L^p membership");
}

QuadratureResult core(const TestFunction& f, const KernelModel& k, double lo, double hi, double tol,
                      std::vector<double> extra = {}) {
  std::vector<double> bps = std::move(extra);
  for (double x : f.singular_points)
    if (x > lo && x < hi) bps.push_back(x);
  if (lo < 0.0 && hi > 0.0) bps.push_back(0.0);
  const double freq = k.frequency + std::abs(f.frequency);
  if (freq > 0.0) {
    const double step = kPi / freq;
    const double lobes = (hi - lo) / step;
    if (lobes > 20.0 && lobes <= 2e5)
      for (double x = lo + step; x < hi; x += step) bps.push_back(x);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  const ComplexFn g = [&f, &k](double t) { return k.eval(t) * f.eval(t); };
  return integrate_finite(g, lo, hi, tol, bps, kDefaultSubdivisions + 4 * bps.size());
}

// int_{-T}^{T} K f folded onto (0, T]: K(t) f(t) + K(-t) f(-t). Pairing t with -t
// lets odd integrands with a non-integrable even part cancel at the origin.
QuadratureResult folded_core(const TestFunction& f, const KernelModel& k, double T, double tol,
                             const std::vector<double>& extra = {}) {
  std::vector<double> bps;
  for (double x : extra)
    if (x > 0.0 && x < T) bps.push_back(x);
  for (double x : f.singular_points)
    if (std::abs(x) > 0.0 && std::abs(x) < T) bps.push_back(std::abs(x));
  const double freq = k.frequency + std::abs(f.frequency);
  if (freq > 0.0) {
    const double step = kPi / freq;
    const double lobes = T / step;
    if (lobes > 20.0 && lobes <= 2e5)
      for (double x = step; x < T; x += step) bps.push_back(x);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  const ComplexFn g = [&f, &k](double t) { return k.eval(t) * f.eval(t) + k.eval(-t) * f.eval(-t); };
  return integrate_finite(g, 0.0, T, tol, bps, kDefaultSubdivisions + 4 * bps.size());
}

struct TailTerm {
  Complex coefficient;
  double frequency;
  RealFn amplitude;
  double constant;
  double exponent;
  bool pure;
};

std::vector<TailTerm> tail_terms(const std::vector<TailComponent>& side, const std::vector<KernelTerm>& kernel) {
  std::vector<TailTerm> out;
  for (const auto& c : side)
    for (const auto& m : c.modes)
      for (const auto& kt : kernel) {
        TailTerm t;
        t.coefficient = kt.coefficient * m.coefficient;
        if (t.coefficient == 0.0) continue;
        t.frequency = kt.frequency + m.frequency;
        if (std::abs(t.frequency) <= 1e-13 * (1.0 + std::abs(kt.frequency) + std::abs(m.frequency))) t.frequency = 0.0;
        const RealFn w = kt.weight;
        const RealFn a = c.amplitude;
        t.amplitude = [w, a](double x) { return w(x) * a(x); };
        t.constant = kt.weight_constant * c.bound_constant;
        t.exponent = kt.weight_exponent + c.bound_exponent;
        t.pure = kt.weight_pure && c.pure_power;
        out.push_back(std::move(t));
      }
  return out;
}

// int_T^inf coefficient e^{i frequency t} amplitude(t) dt
QuadratureResult tail_term_integral(const TailTerm& t, double T, double tol) {
  const double ck = std::abs(t.coefficient);
  const double gamma = t.exponent;
  if (t.frequency == 0.0 && t.pure) {
    QuadratureResult r;
    r.value = t.coefficient * t.constant * std::pow(T, 1.0 - gamma) / (gamma - 1.0);
    r.abs_error_estimate = 4 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
    r.evaluations = 0;
    return r;
  }
  const RealFn amp = t.amplitude;
  const Complex coef = t.coefficient;
  const double nu = t.frequency;
  if (nu != 0.0) {
    const double reach = std::pow(2.0 * ck * t.constant / ((gamma - 1.0) * tol), 1.0 / (gamma - 1.0));
    if (std::abs(nu) * (reach - T) > 40.0 * kPi) {
      QuadratureResult r = integrate_fourier_tail(amp, nu, T, tol / ck);
      r *= coef;
      return r;
    }
  }
  return integrate_power_tail([amp, coef, nu](double x) { return coef * std::exp(kI * nu * x) * amp(x); }, T,
                              ck * t.constant, gamma, tol);
}

bool periodic_matches(const PeriodicTail& pt, double s) {
  const double m = s * pt.period / (2.0 * kPi);
  const double r = std::round(m);
  return r != 0.0 && std::abs(m - r) <= 1e-13 * std::max(1.0, std::abs(m));
}

QuadratureResult integrate_decay_only(const TestFunction& f, const KernelModel& k, double tol) {
  const double kc = k.tail_constant;
  return std::visit(
      [&](const auto& d) -> QuadratureResult {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CompactSupport>) {
          return core(f, k, d.lo, d.hi, tol);
        } else {
          const double T0 = std::max({d.onset, k.onset, 1.0});
          double X = T0;
          double bound = 0.0;
          bool capped = false;
          std::vector<double> extra;
          if constexpr (std::is_same_v<T, ExponentialTail>) {
            // both sides: 2 (kc/T0) M e^{-lambda X} / lambda <= tol/2
            X = std::max(T0, std::log(4.0 * kc * d.constant / (T0 * d.rate * tol)) / d.rate);
            bound = 2.0 * kc * d.constant * std::exp(-d.rate * X) / (T0 * d.rate);
          } else {
            // both sides: 2 kc M X^{-beta} / beta <= tol/2
            const double cap = 1e6 * T0;
            X = std::max(T0, std::pow(4.0 * kc * d.constant / (d.exponent * tol), 1.0 / d.exponent));
            if (X > cap) {
              X = cap;
              capped = true;
            }
            bound = 2.0 * kc * d.constant * std::pow(X, -d.exponent) / d.exponent;
            extra = geometric_points(T0, X);
            extra.push_back(T0);
          }
          QuadratureResult r = folded_core(f, k, X, capped ? tol : tol / 2, extra);
          r.abs_error_estimate += bound;
          if (capped) r.converged = false;
          return r;
        }
      },
      f.decay);
}

// int K f over the line: compact support, tail model, periodic tail, or decay bound.
QuadratureResult integrate_against(const TestFunction& f, const KernelModel& k, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  require_integrable(f);
  validate(f.decay);
  if (std::holds_alternative<CompactSupport>(f.decay)) return integrate_decay_only(f, k, tol);

  if (f.tail) {
    const double T = std::max(f.tail->onset, k.onset);
    QuadratureResult r = folded_core(f, k, T, tol / 2);
    std::vector<TailTerm> terms = tail_terms(f.tail->positive, k.positive);
    for (auto& t : tail_terms(f.tail->negative, k.negative)) terms.push_back(std::move(t));
    const double each = tol / (2.0 * std::max<std::size_t>(1, terms.size()));
    for (const auto& t : terms) r += tail_term_integral(t, T, each);
    return r;
  }

  if (k.plain && f.periodic && periodic_matches(*f.periodic, k.s)) {
    const PeriodicTail& pt = *f.periodic;
    const double s = k.s;
    const double T = pt.onset;
    QuadratureResult r = folded_core(f, k, T, tol / 2);
    const ComplexFn pos = pt.positive, neg = pt.negative;
    const ComplexFn Q = [s, pos, neg](double t) {
      const Complex e = std::exp(-kI * s * t);
      return ((1.0 - e) * pos(t) - (1.0 - std::conj(e)) * neg(t)) / kI;
    };
    r += integrate_periodic_power(Q, pt.period, pt.exponent + 1.0, T, tol / 2);
    return r;
  }

  return integrate_decay_only(f, k, tol);
}

QuadratureResult zero_result() {
  QuadratureResult r;
  r.value = 0.0;
  r.abs_error_estimate = 0.0;
  r.evaluations = 1;
  r.converged = true;
  return r;
}

ConstantValue cached_cq(double q) {
  static std::mutex mu;
  static std::map<double, ConstantValue> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(q);
    if (it != memo.end()) return it->second;
  }
  const ConstantValue c = cq(q, 1e-10);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(q, c);
  return c;
}

}  // namespace

Exponents::Exponents(double p_) : p(p_) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("exponent p must lie in [1, inf)");
}

Complex u_kernel(double s, double t) {
  const double x = s * t;
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return s * Complex(1.0 - x2 / 6.0 + x2 * x2 / 120.0, -x / 2.0 + x * x2 / 24.0 - x * x2 * x2 / 720.0);
  }
  const double h = std::sin(0.5 * x);
  return {std::sin(x) / t, -2.0 * h * h / t};
}

double u_kernel_phase(double s, double t) {
  if (s == 0.0) return 0.0;
  if (t == 0.0) return s > 0.0 ? 0.0 : kPi;
  // u = (sin x - 2i sin^2(x/2)) / t with x = st; scaling by |t| keeps it a function of x and sgn t
  const double x = s * t;
  const double h = std::sin(0.5 * x);
  const double st = sgn(t);
  const double re = st * std::sin(x);
  const double im = -st * 2.0 * h * h;
  if (re == 0.0 && im == 0.0) return 0.0;
  if (im == 0.0 && re < 0.0) return kPi;
  return std::atan2(im, re);
}

Complex u_kernel_deriv(int n, double s, double t) {
  if (n < 0) throw std::invalid_argument("u_kernel_deriv: n must be >= 0");
  if (n == 0) return u_kernel(s, t);
  const double x = s * t;
  double nfact = 1.0;
  for (int k = 2; k <= n; ++k) nfact *= k;
  const double sign = n % 2 ? -1.0 : 1.0;
  if (std::abs(x) < n + 2.0) {
    // e^{-ix} sum_j (ix)^j / (n+1+j)!, the tail of the exponential series
    double denom = nfact * (n + 1);  // (n+1)!
    Complex term = 1.0 / denom;
    Complex sum = term;
    for (int j = 1; j < 200; ++j) {
      term *= kI * x / static_cast<double>(n + 1 + j);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    Complex in = 1.0;
    for (int k = 0; k < n; ++k) in *= kI;
    return sign * nfact * in * std::pow(s, n + 1) * std::exp(-kI * x) * sum;
  }
  Complex partial = 0.0, term = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) term *= kI * x / static_cast<double>(k);
    partial += term;
  }
  return sign * nfact / (kI * std::pow(t, n + 1)) * (1.0 - std::exp(-kI * x) * partial);
}

QuadratureResult psif(const TestFunction& f, double s, double tol) {
  require_integrable(f);
  if (s == 0.0) return zero_result();
  return integrate_against(f, plain_kernel(s), tol);
}

Complex psif_dirac(double a, double s) { return u_kernel(s, a); }

double primitive_norm(const TestFunction& f, double p, double rel_tol) { return lp_norm(f, p, rel_tol); }

BoundCheck growth_bound_margin(const TestFunction& f, double p, double s, double tol) {
  const Exponents e(p);
  const NormResult n = lp_norm_checked(f, p, 1e-10);
  const ConstantValue c = cached_cq(e.q());
  BoundCheck b;
  b.s = s;
  if (s == 0.0) return b;
  const QuadratureResult r = psif(f, s, tol);
  const double sp = std::pow(std::abs(s), 1.0 / p);
  b.lhs = std::abs(r.value);
  b.bound = c.value * n.value * sp;
  b.margin = b.bound - b.lhs;
  b.error_budget = r.abs_error_estimate + sp * (c.abs_error_estimate * n.value + c.value * n.abs_error_estimate);
  return b;
}

std::vector<BoundCheck> growth_bound_margins(const TestFunction& f, double p, const std::vector<double>& s,
                                             double tol) {
  const Exponents e(p);
  const NormResult n = lp_norm_checked(f, p, 1e-10);
  const ConstantValue c = cached_cq(e.q());
  std::vector<BoundCheck> out(s.size());
  parallel_for(s.size(), [&](std::size_t i) {
    BoundCheck& b = out[i];
    b.s = s[i];
    if (s[i] == 0.0) return;
    const QuadratureResult r = psif(f, s[i], tol);
    const double sp = std::pow(std::abs(s[i]), 1.0 / p);
    b.lhs = std::abs(r.value);
    b.bound = c.value * n.value * sp;
    b.margin = b.bound - b.lhs;
    b.error_budget = r.abs_error_estimate + sp * (c.abs_error_estimate * n.value + c.value * n.abs_error_estimate);
  });
  return out;
}

BoundCheck holder_ratio_max(const TestFunction& f, double p, const std::vector<double>& s_samples,
                            const std::vector<double>& h_samples, double tol) {
  const Exponents e(p);
  for (double h : h_samples)
    if (!(h > 0.0)) throw std::invalid_argument("holder_ratio_max: h samples must be positive");
  const NormResult n = lp_norm_checked(f, p, 1e-10);
  const ConstantValue c = cached_cq(e.q());
  std::vector<double> pts;
  for (double s : s_samples) {
    pts.push_back(s);
    for (double h : h_samples) pts.push_back(s + h);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<QuadratureResult> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = psif(f, pts[i], tol); });
  auto lookup = [&](double x) -> const QuadratureResult& {
    return vals[std::lower_bound(pts.begin(), pts.end(), x) - pts.begin()];
  };
  BoundCheck best;
  best.bound = c.value * n.value;
  best.lhs = -1.0;
  const double bound_err = c.abs_error_estimate * n.value + c.value * n.abs_error_estimate;
  for (double s : s_samples)
    for (double h : h_samples) {
      const QuadratureResult& a = lookup(s);
      const QuadratureResult& b = lookup(s + h);
      const double hp = std::pow(h, 1.0 / p);
      const double ratio = std::abs(b.value - a.value) / hp;
      const double err = (a.abs_error_estimate + b.abs_error_estimate) / hp + bound_err;
      // keep the pair closest to violating the bound, measured in error budgets
      const double slack = (best.bound - ratio) / std::max(err, 1e-300);
      const double best_slack = best.lhs < 0 ? kInf : best.margin / std::max(best.error_budget, 1e-300);
      if (best.lhs < 0 || slack < best_slack) {
        best.lhs = ratio;
        best.margin = best.bound - ratio;
        best.error_budget = err;
        best.s = s;
        best.h = h;
      }
    }
  if (best.lhs < 0) best.lhs = 0.0, best.margin = best.bound;
  return best;
}

const QuadratureResult& PsifCache::at(double s, double tol) {
  const auto key = std::make_pair(s, tol);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  return memo_.emplace(key, psif(f_, s, tol)).first->second;
}

PsifSamples sample_psif(const TestFunction& f, double p, std::vector<double> grid, double tol) {
  std::sort(grid.begin(), grid.end());
  PsifSamples out;
  out.f_id = f.id;
  out.p = p;
  std::vector<QuadratureResult> r(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { r[i] = psif(f, grid[i], tol); });
  out.grid = std::move(grid);
  for (const auto& x : r) {
    out.values.push_back(x.value);
    out.errors.push_back(x.abs_error_estimate);
    out.converged.push_back(x.converged);
  }
  return out;
}

TestFunction extremal_function(double s, double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "p = " << p << "; the extremal function needs a finite conjugate exponent";
    throw HypothesisError("1 < p < inf", os.str());
  }
  if (s == 0.0 || !std::isfinite(s)) throw HypothesisError("s != 0", "the extremal function needs s != 0");
  const double e = 1.0 / (p - 1.0);  // q/p
  const double L = 2.0 * kPi / std::abs(s);
  TestFunction f;
  std::ostringstream id;
  id << "extremal(s=" << s << ",p=" << p << ")";
  f.id = id.str();
  f.eval = [s, e](double t) -> Complex {
    return std::polar(std::pow(std::abs(u_kernel(s, t)), e), -u_kernel_phase(s, t));
  };
  f.decay = PowerTail{e, L, std::pow(2.0, e)};
  f.lp = p < 2.0 ? LpRange::all() : LpRange::above(p - 1.0, false);
  f.singular_points = {-L, L};
  f.real_valued = false;
  f.sup_bound = std::pow(std::abs(s), e);
  f.frequency = std::abs(s);
  // t^e |u_s(t)|^e = |2 sin(st/2)|^e
  auto side = [s, e](double sign) -> ComplexFn {
    return [s, e, sign](double t) -> Complex {
      return std::polar(std::pow(std::abs(2.0 * std::sin(0.5 * s * t)), e), -u_kernel_phase(s, sign * t));
    };
  };
  f.periodic = PeriodicTail{L, e, L, side(1.0), side(-1.0)};
  return f;
}

EqualityCheck extremal_equality(double s, double p, double tol) {
  const TestFunction f = extremal_function(s, p);
  const Exponents e(p);
  const QuadratureResult r = psif(f, s, tol);
  const NormResult n = lp_norm_checked(f, p, 1e-10);
  const ConstantValue c = cached_cq(e.q());
  EqualityCheck out;
  out.psif_abs = std::abs(r.value);
  out.bound = c.value * n.value * std::pow(std::abs(s), 1.0 / p);
  out.ratio = out.psif_abs / out.bound;
  out.ratio_error = out.ratio * (r.abs_error_estimate / out.psif_abs + n.abs_error_estimate / n.value +
                                 c.abs_error_estimate / c.value);
  return out;
}

QuadratureResult psif_translate(const TestFunction& f, double a, double s, double tol) {
  require_integrable(f);
  if (s == 0.0) return zero_result();
  if (a == 0.0) return psif(f, s, tol);
  return integrate_against(f, shifted_kernel(s, a), tol);
}

QuadratureResult psif_modulate(const TestFunction& f, double a, double s, double tol) {
  QuadratureResult r = psif(f, s - a, tol / 2);
  QuadratureResult z = psif(f, -a, tol / 2);
  z *= -1.0;
  r += z;
  return r;
}

QuadratureResult psif_reflect(const TestFunction& f, double s, double tol) {
  QuadratureResult r = psif(f, -s, tol);
  r *= -1.0;
  return r;
}

QuadratureResult psif_dilate(const TestFunction& f, double a, double b, double s, double tol) {
  if (a == 0.0 || !std::isfinite(a)) throw HypothesisError("a != 0", "dilation needs a nonzero finite factor");
  QuadratureResult r = psif_translate(f, -b, s / a, tol);
  r *= sgn(a);
  return r;
}

QuadratureResult psif_of_derivative(const TestFunction& F, double s, double tol) {
  if (!F.g.absolutely_continuous || !F.g.vanishes_at_infinity)
    throw HypothesisError("F absolutely continuous", F.id + " is not declared absolutely continuous with limit 0");
  require_integrable(F);
  if (s == 0.0) return zero_result();
  return integrate_against(F, derivative_kernel(s), tol);
}

namespace {

TwoRouteCheck make_check(std::string name, double s, const QuadratureResult& formula,
                         const QuadratureResult& direct) {
  TwoRouteCheck c;
  c.identity = std::move(name);
  c.s = s;
  c.formula = formula.value;
  c.direct = direct.value;
  c.formula_error = formula.abs_error_estimate;
  c.direct_error = direct.abs_error_estimate;
  c.converged = formula.converged && direct.converged;
  return c;
}

}  // namespace

TwoRouteCheck check_translate(const TestFunction& f, double a, double s, double tol) {
  return make_check("translate", s, psif_translate(f, a, s, tol), psif(translate(f, a), s, tol));
}

TwoRouteCheck check_modulate(const TestFunction& f, double a, double s, double tol) {
  return make_check("modulate", s, psif_modulate(f, a, s, tol), psif(modulate(f, a), s, tol));
}

TwoRouteCheck check_reflect(const TestFunction& f, double s, double tol) {
  return make_check("reflect", s, psif_reflect(f, s, tol), psif(reflect(f), s, tol));
}

TwoRouteCheck check_dilate(const TestFunction& f, double a, double b, double s, double tol) {
  return make_check("dilate", s, psif_dilate(f, a, b, s, tol), psif(dilate(f, a, b), s, tol));
}

TwoRouteCheck check_derivative(const TestFunction& F, double s, double tol) {
  if (!F.derivative) throw HypothesisError("derivative available", F.id + " carries no derivative");
  return make_check("derivative", s, psif_of_derivative(F, s, tol), psif(*F.derivative, s, tol));
}

}  // namespace lpf

#include "lpfourier/test_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lpf {

LpRange LpRange::none() {
  LpRange r;
  r.empty = true;
  return r;
}

LpRange LpRange::all() { return LpRange{}; }

LpRange LpRange::above(double lo, bool closed) {
  LpRange r;
  r.lo = lo;
  r.lo_closed = closed;
  return r;
}

LpRange LpRange::below(double hi, bool closed) {
  LpRange r;
  r.hi = hi;
  r.hi_closed = closed;
  return r;
}

bool LpRange::contains(double p) const {
  if (empty || !(p >= 1.0) || !std::isfinite(p)) return false;
  const bool lo_ok = lo_closed ? p >= lo : p > lo;
  const bool hi_ok = hi_closed ? p <= hi : p < hi;
  return lo_ok && hi_ok;
}

bool LpRange::intersects(double a, bool a_closed, double b, bool b_closed) const {
  if (empty) return false;
  const double l = std::max(lo, a);
  const double h = std::min(hi, b);
  if (l < h) return true;
  if (l > h) return false;
  const bool l_in = (l == lo ? lo_closed : true) && (l == a ? a_closed : true);
  const bool h_in = (h == hi ? hi_closed : true) && (h == b ? b_closed : true);
  return l_in && h_in;
}

std::string LpRange::describe() const {
  if (empty) return "{}";
  std::ostringstream os;
  os << (lo_closed ? "[" : "(") << lo << ",";
  if (std::isinf(hi))
    os << "inf)";
  else
    os << hi << (hi_closed ? "]" : ")");
  return os.str();
}

namespace {

LpRange intersect(const LpRange& a, const LpRange& b) {
  if (a.empty || b.empty) return LpRange::none();
  LpRange r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  if (r.lo > r.hi || (r.lo == r.hi && !(r.lo_closed && r.hi_closed))) return LpRange::none();
  return r;
}

Regularity both(const Regularity& a, const Regularity& b) {
  Regularity r;
  r.absolutely_continuous = a.absolutely_continuous && b.absolutely_continuous;
  r.vanishes_at_infinity = a.vanishes_at_infinity && b.vanishes_at_infinity;
  r.integrable = a.integrable && b.integrable;
  r.derivative_lp = intersect(a.derivative_lp, b.derivative_lp);
  r.derivative_bv = a.derivative_bv && b.derivative_bv;
  return r;
}

// Regularity of x f(x - a) from those of f and x f(x).
Regularity shifted_h(const TestFunction& f, double a) { return a == 0.0 ? f.h : both(f.g, f.h); }

TailComponent shift_component(const TailComponent& c, double shift) {
  TailComponent out;
  const RealFn amp = c.amplitude;
  out.amplitude = [amp, shift](double t) { return amp(t + shift); };
  out.bound_exponent = c.bound_exponent;
  out.bound_constant = c.bound_constant * std::pow(2.0, c.bound_exponent);
  out.pure_power = false;
  for (const auto& m : c.modes)
    out.modes.push_back({m.frequency, m.coefficient * std::exp(Complex(0.0, m.frequency * shift))});
  return out;
}

}  // namespace

DecayInfo shifted_decay(const DecayInfo& d, double a) {
  const double aa = std::abs(a);
  return std::visit(
      [&](const auto& x) -> DecayInfo {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CompactSupport>) {
          return CompactSupport{x.lo + a, x.hi + a};
        } else if constexpr (std::is_same_v<T, ExponentialTail>) {
          return ExponentialTail{x.rate, x.onset + aa, x.constant * std::exp(x.rate * aa)};
        } else {
          return PowerTail{x.exponent, x.onset + 2.0 * aa, x.constant * std::pow(2.0, x.exponent)};
        }
      },
      d);
}

TestFunction translate(const TestFunction& f, double a) {
  if (a == 0.0) return f;
  TestFunction r;
  std::ostringstream id;
  id << "translate(" << f.id << "," << a << ")";
  r.id = id.str();
  const ComplexFn e = f.eval;
  r.eval = [e, a](double t) { return e(t - a); };
  r.decay = shifted_decay(f.decay, a);
  r.lp = f.lp;
  r.known_lp_norm = f.known_lp_norm;
  for (double x : f.singular_points) r.singular_points.push_back(x + a);
  r.g = f.g;
  r.h = shifted_h(f, a);
  r.real_valued = f.real_valued;
  r.psif_without_lp = f.psif_without_lp;
  r.sup_bound = f.sup_bound;
  r.frequency = f.frequency;
  if (f.tail) {
    OscillatoryTail t;
    t.onset = f.tail->onset + 2.0 * std::abs(a);
    // f(t - a): amplitude A(t - a), phase e^{-i nu a}; f(-t - a): A_(t + a), phase e^{+i nu a}
    for (const auto& c : f.tail->positive) t.positive.push_back(shift_component(c, -a));
    for (const auto& c : f.tail->negative) t.negative.push_back(shift_component(c, a));
    r.tail = std::move(t);
  }
  if (f.derivative) r.derivative = std::make_shared<TestFunction>(translate(*f.derivative, a));
  return r;
}

TestFunction modulate(const TestFunction& f, double a) {
  if (a == 0.0) return f;
  TestFunction r = f;
  std::ostringstream id;
  id << "modulate(" << f.id << "," << a << ")";
  r.id = id.str();
  const ComplexFn e = f.eval;
  r.eval = [e, a](double t) { return std::exp(Complex(0.0, a * t)) * e(t); };
  r.known_lp_norm = f.known_lp_norm;
  r.closed_form_psif.reset();
  r.closed_form_fhat.reset();
  r.fhat_bv_closed_form = false;
  r.real_valued = false;
  r.frequency = f.frequency + std::abs(a);
  r.g.derivative_lp = intersect(f.g.derivative_lp, f.lp);
  r.g.derivative_bv = false;
  r.h = Regularity{};
  r.derivative.reset();
  if (f.tail) {
    for (auto& c : r.tail->positive)
      for (auto& m : c.modes) m.frequency += a;
    for (auto& c : r.tail->negative)
      for (auto& m : c.modes) m.frequency -= a;
  }
  if (f.periodic) {
    const double turns = a * f.periodic->period / (2.0 * kPi);
    if (std::abs(turns - std::round(turns)) < 1e-12) {
      const ComplexFn pp = f.periodic->positive, pn = f.periodic->negative;
      r.periodic->positive = [pp, a](double t) { return std::exp(Complex(0.0, a * t)) * pp(t); };
      r.periodic->negative = [pn, a](double t) { return std::exp(Complex(0.0, -a * t)) * pn(t); };
    } else {
      r.periodic.reset();
    }
  }
  return r;
}

TestFunction reflect(const TestFunction& f) {
  TestFunction r = f;
  r.id = "reflect(" + f.id + ")";
  const ComplexFn e = f.eval;
  r.eval = [e](double t) { return e(-t); };
  if (const auto* c = std::get_if<CompactSupport>(&f.decay)) r.decay = CompactSupport{-c->hi, -c->lo};
  r.singular_points.clear();
  for (double x : f.singular_points) r.singular_points.push_back(-x);
  std::sort(r.singular_points.begin(), r.singular_points.end());
  r.closed_form_psif.reset();
  r.closed_form_fhat.reset();
  r.fhat_bv_closed_form = f.fhat_bv_closed_form;
  if (f.tail) std::swap(r.tail->positive, r.tail->negative);
  if (f.periodic) std::swap(r.periodic->positive, r.periodic->negative);
  if (f.derivative) {
    // d/dt f(-t) = -f'(-t)
    TestFunction d = reflect(*f.derivative);
    d = combine(-1.0, d, 0.0, d);
    r.derivative = std::make_shared<TestFunction>(std::move(d));
  }
  return r;
}

TestFunction dilate(const TestFunction& f, double a, double b) {
  if (a == 0.0) throw std::invalid_argument("dilate: a must be nonzero");
  const double aa = std::abs(a), ab = std::abs(b);
  TestFunction r;
  std::ostringstream id;
  id << "dilate(" << f.id << "," << a << "," << b << ")";
  r.id = id.str();
  const ComplexFn e = f.eval;
  r.eval = [e, a, b](double t) { return e(a * t + b); };
  r.decay = std::visit(
      [&](const auto& x) -> DecayInfo {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, CompactSupport>) {
          const double u = (x.lo - b) / a, v = (x.hi - b) / a;
          return CompactSupport{std::min(u, v), std::max(u, v)};
        } else if constexpr (std::is_same_v<T, ExponentialTail>) {
          return ExponentialTail{x.rate * aa, (x.onset + ab) / aa, x.constant * std::exp(x.rate * ab)};
        } else {
          return PowerTail{x.exponent, (x.onset + 2.0 * ab) / aa,
                           x.constant * std::pow(2.0, x.exponent) * std::pow(aa, -x.exponent)};
        }
      },
      f.decay);
  r.lp = f.lp;
  if (f.known_lp_norm) {
    const RealFn k = f.known_lp_norm;
    r.known_lp_norm = [k, aa](double p) { return std::pow(aa, -1.0 / p) * k(p); };
  }
  for (double x : f.singular_points) r.singular_points.push_back((x - b) / a);
  std::sort(r.singular_points.begin(), r.singular_points.end());
  r.g = f.g;
  r.h = b == 0.0 ? f.h : both(f.g, f.h);
  r.real_valued = f.real_valued;
  r.psif_without_lp = f.psif_without_lp;
  r.sup_bound = f.sup_bound;
  r.frequency = f.frequency * aa;
  if (f.tail) {
    OscillatoryTail t;
    t.onset = (f.tail->onset + 2.0 * ab) / aa;
    // side s in {+1,-1}: f(s a t + b) for t > 0 reads the model of sign(s a)
    auto map_side = [&](const std::vector<TailComponent>& src, double shift) {
      std::vector<TailComponent> out;
      for (const auto& c : src) {
        TailComponent o;
        const RealFn amp = c.amplitude;
        o.amplitude = [amp, aa, shift](double t) { return amp(aa * t + shift); };
        o.bound_exponent = c.bound_exponent;
        o.pure_power = c.pure_power && shift == 0.0;
        o.bound_constant = c.bound_constant * std::pow(aa, -c.bound_exponent) *
                           (o.pure_power ? 1.0 : std::pow(2.0, c.bound_exponent));
        for (const auto& m : c.modes)
          o.modes.push_back({m.frequency * aa, m.coefficient * std::exp(Complex(0.0, m.frequency * shift))});
        out.push_back(std::move(o));
      }
      return out;
    };
    if (a > 0.0) {
      t.positive = map_side(f.tail->positive, b);    // f(at + b)
      t.negative = map_side(f.tail->negative, -b);   // f(-(at - b))
    } else {
      t.positive = map_side(f.tail->negative, -b);   // f(-(|a|t - b))
      t.negative = map_side(f.tail->positive, b);    // f(|a|t + b)
    }
    r.tail = std::move(t);
  }
  if (f.periodic && b == 0.0) {
    PeriodicTail p = *f.periodic;
    const ComplexFn pp = a > 0.0 ? f.periodic->positive : f.periodic->negative;
    const ComplexFn pn = a > 0.0 ? f.periodic->negative : f.periodic->positive;
    const double scale = std::pow(aa, -p.exponent);
    p.onset = f.periodic->onset / aa;
    p.period = f.periodic->period / aa;
    p.positive = [pp, aa, scale](double t) { return scale * pp(aa * t); };
    p.negative = [pn, aa, scale](double t) { return scale * pn(aa * t); };
    r.periodic = std::move(p);
  }
  if (f.derivative) {
    // d/dt f(at + b) = a f'(at + b)
    TestFunction d = dilate(*f.derivative, a, b);
    r.derivative = std::make_shared<TestFunction>(combine(a, d, 0.0, d));
  }
  return r;
}

DecayInfo combine_decay(const DecayInfo& f, double wf, const DecayInfo& g, double wg) {
  auto radius = [](const DecayInfo& d) {
    const auto& c = std::get<CompactSupport>(d);
    return std::max(std::abs(c.lo), std::abs(c.hi));
  };
  const bool fc = std::holds_alternative<CompactSupport>(f);
  const bool gc = std::holds_alternative<CompactSupport>(g);
  if (fc && gc) {
    const auto& a = std::get<CompactSupport>(f);
    const auto& b = std::get<CompactSupport>(g);
    return CompactSupport{std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
  }
  const bool fp = std::holds_alternative<PowerTail>(f);
  const bool gp = std::holds_alternative<PowerTail>(g);
  if (!fp && !gp) {
    // exponential with compact or exponential
    double rate = kInf, onset = 0.0;
    for (const DecayInfo* d : {&f, &g}) {
      if (const auto* e = std::get_if<ExponentialTail>(d)) {
        rate = std::min(rate, e->rate);
        onset = std::max(onset, e->onset);
      } else {
        onset = std::max(onset, radius(*d));
      }
    }
    double m = 0.0;
    for (auto [d, w] : {std::pair{&f, wf}, std::pair{&g, wg}})
      if (const auto* e = std::get_if<ExponentialTail>(d))
        m += w * e->constant * std::exp(-(e->rate - rate) * onset);
    return ExponentialTail{rate, onset, m};
  }
  double beta = kInf, onset = 0.0;
  for (const DecayInfo* d : {&f, &g}) {
    if (const auto* p = std::get_if<PowerTail>(d)) {
      beta = std::min(beta, p->exponent);
      onset = std::max(onset, p->onset);
    } else if (const auto* e = std::get_if<ExponentialTail>(d)) {
      onset = std::max(onset, e->onset);
    } else {
      onset = std::max(onset, radius(*d));
    }
  }
  double m = 0.0;
  for (auto [d, w] : {std::pair{&f, wf}, std::pair{&g, wg}}) {
    if (const auto* p = std::get_if<PowerTail>(d)) {
      m += w * p->constant * std::pow(onset, beta - p->exponent);
    } else if (const auto* e = std::get_if<ExponentialTail>(d)) {
      // sup_{t >= onset} t^beta e^{-rate t}
      const double peak = std::max(beta / e->rate, onset);
      m += w * e->constant * std::pow(peak, beta) * std::exp(-e->rate * peak);
    }
  }
  return PowerTail{beta, onset, m};
}

TestFunction combine(Complex alpha, const TestFunction& f, Complex beta, const TestFunction& g) {
  TestFunction r;
  std::ostringstream id;
  id << "combine(" << f.id << "," << g.id << ")";
  r.id = id.str();
  const ComplexFn ef = f.eval, eg = g.eval;
  r.eval = [ef, eg, alpha, beta](double t) {
    Complex v = alpha * ef(t);
    if (beta != 0.0) v += beta * eg(t);
    return v;
  };
  const double wf = std::abs(alpha), wg = std::abs(beta);
  r.decay = combine_decay(f.decay, wf, g.decay, wg);
  r.lp = intersect(f.lp, g.lp);
  if (beta == 0.0) {
    r.lp = f.lp;
    r.decay = f.decay;
    if (auto* p = std::get_if<PowerTail>(&r.decay)) p->constant *= wf;
    if (auto* e = std::get_if<ExponentialTail>(&r.decay)) e->constant *= wf;
    if (f.known_lp_norm) {
      const RealFn k = f.known_lp_norm;
      r.known_lp_norm = [k, wf](double p) { return wf * k(p); };
    }
  }
  r.singular_points = f.singular_points;
  r.singular_points.insert(r.singular_points.end(), g.singular_points.begin(), g.singular_points.end());
  std::sort(r.singular_points.begin(), r.singular_points.end());
  r.singular_points.erase(std::unique(r.singular_points.begin(), r.singular_points.end()), r.singular_points.end());
  r.g = both(f.g, g.g);
  r.h = both(f.h, g.h);
  r.real_valued = f.real_valued && g.real_valued && alpha.imag() == 0.0 && beta.imag() == 0.0;
  r.psif_without_lp = f.psif_without_lp || g.psif_without_lp;
  r.sup_bound = wf * f.sup_bound + (beta == 0.0 ? 0.0 : wg * g.sup_bound);
  r.frequency = std::max(f.frequency, g.frequency);

  // tail model: both sides must be fully described beyond the common onset
  auto outer_radius = [](const TestFunction& h) -> std::optional<double> {
    if (const auto* c = std::get_if<CompactSupport>(&h.decay)) return std::max(std::abs(c->lo), std::abs(c->hi));
    return std::nullopt;
  };
  auto scaled = [](const std::vector<TailComponent>& src, Complex w) {
    std::vector<TailComponent> out = src;
    for (auto& c : out)
      for (auto& m : c.modes) m.coefficient *= w;
    return out;
  };
  const bool f_ok = f.tail.has_value() || outer_radius(f).has_value();
  const bool g_ok = beta == 0.0 || g.tail.has_value() || outer_radius(g).has_value();
  if ((f.tail || (g.tail && beta != 0.0)) && f_ok && g_ok) {
    OscillatoryTail t;
    t.onset = 0.0;
    for (const TestFunction* h : {&f, &g}) {
      if (h == &g && beta == 0.0) continue;
      t.onset = std::max(t.onset, h->tail ? h->tail->onset : *outer_radius(*h) * (1.0 + 1e-12));
    }
    if (f.tail) {
      auto p = scaled(f.tail->positive, alpha), n = scaled(f.tail->negative, alpha);
      t.positive.insert(t.positive.end(), p.begin(), p.end());
      t.negative.insert(t.negative.end(), n.begin(), n.end());
    }
    if (g.tail && beta != 0.0) {
      auto p = scaled(g.tail->positive, beta), n = scaled(g.tail->negative, beta);
      t.positive.insert(t.positive.end(), p.begin(), p.end());
      t.negative.insert(t.negative.end(), n.begin(), n.end());
    }
    r.tail = std::move(t);
  }
  if (beta == 0.0 && f.periodic) {
    PeriodicTail p = *f.periodic;
    const ComplexFn pp = p.positive, pn = p.negative;
    p.positive = [pp, alpha](double t) { return alpha * pp(t); };
    p.negative = [pn, alpha](double t) { return alpha * pn(t); };
    r.periodic = std::move(p);
  } else if (f.periodic && g.periodic && f.periodic->period == g.periodic->period &&
             f.periodic->exponent == g.periodic->exponent) {
    PeriodicTail p = *f.periodic;
    p.onset = std::max(f.periodic->onset, g.periodic->onset);
    const ComplexFn fp = f.periodic->positive, fn = f.periodic->negative;
    const ComplexFn gp = g.periodic->positive, gn = g.periodic->negative;
    p.positive = [=](double t) { return alpha * fp(t) + beta * gp(t); };
    p.negative = [=](double t) { return alpha * fn(t) + beta * gn(t); };
    r.periodic = std::move(p);
  }
  if (f.derivative && (beta == 0.0 || g.derivative)) {
    r.derivative = std::make_shared<TestFunction>(
        beta == 0.0 ? combine(alpha, *f.derivative, 0.0, *f.derivative)
                    : combine(alpha, *f.derivative, beta, *g.derivative));
  }
  if (beta == 0.0) {
    r.closed_form_psif.reset();
    if (f.closed_form_psif) {
      const ComplexFn c = *f.closed_form_psif;
      r.closed_form_psif = [c, alpha](double s) { return alpha * c(s); };
    }
    if (f.closed_form_fhat) {
      const ComplexFn c = *f.closed_form_fhat;
      r.closed_form_fhat = [c, alpha](double s) { return alpha * c(s); };
    }
    r.fhat_bv_closed_form = f.fhat_bv_closed_form;
    r.g = f.g;
    r.h = f.h;
  } else {
    if (f.closed_form_psif && g.closed_form_psif) {
      const ComplexFn a = *f.closed_form_psif, b = *g.closed_form_psif;
      r.closed_form_psif = [=](double s) { return alpha * a(s) + beta * b(s); };
    }
    if (f.closed_form_fhat && g.closed_form_fhat) {
      const ComplexFn a = *f.closed_form_fhat, b = *g.closed_form_fhat;
      r.closed_form_fhat = [=](double s) { return alpha * a(s) + beta * b(s); };
    }
  }
  return r;
}

}  // namespace lpf

#include "lpfourier/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpfourier/catalog.hpp"
#include "lpfourier/constants.hpp"
#include "lpfourier/lp_norm.hpp"
#include "lpfourier/parallel.hpp"
#include "lpfourier/psif.hpp"

namespace lpf {

namespace {

const Complex kI(0.0, 1.0);

double strength(const DecayInfo& d) {
  if (std::holds_alternative<CompactSupport>(d)) return kInf;
  if (const auto* e = std::get_if<ExponentialTail>(&d)) return 1e6 + e->rate;
  return std::get<PowerTail>(d).exponent;
}

std::optional<DecayInfo> stronger(std::optional<DecayInfo> a, std::optional<DecayInfo> b) {
  if (!a) return b;
  if (!b) return a;
  return strength(*b) > strength(*a) ? b : a;
}

DecayInfo scaled(const DecayInfo& d, double c) { return combine_decay(d, c, d, 0.0); }

double onset_of(const DecayInfo& d) {
  if (const auto* p = std::get_if<PowerTail>(&d)) return p->onset;
  if (const auto* e = std::get_if<ExponentialTail>(&d)) return e->onset;
  return kInf;
}

// refine around a bump of width w centred at c so a narrow kernel is not stepped over
void add_scale_points(std::vector<double>& bps, double c, double w) {
  if (!(w > 0.0 && w < 1.0)) return;
  for (double h = w / 64.0; h < 1.0; h *= 2.0) bps.insert(bps.end(), {c - h, c + h});
}

bool finite(const DecayInfo& d) {
  if (const auto* p = std::get_if<PowerTail>(&d)) return std::isfinite(p->constant) && std::isfinite(p->onset);
  if (const auto* e = std::get_if<ExponentialTail>(&d)) return std::isfinite(e->constant) && std::isfinite(e->onset);
  return true;
}

double radius(const CompactSupport& c) { return std::max(std::abs(c.lo), std::abs(c.hi)); }

DecayInfo reflected(const DecayInfo& d) {
  if (const auto* c = std::get_if<CompactSupport>(&d)) return CompactSupport{-c->hi, -c->lo};
  return d;
}

// w env(|x|/2), valid for |x| past twice the onset.
DecayInfo halved(const DecayInfo& d, double w) {
  return std::visit(
      [w](const auto& x) -> DecayInfo {
        using D = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<D, CompactSupport>)
          return CompactSupport{-2.0 * radius(x), 2.0 * radius(x)};
        else if constexpr (std::is_same_v<D, PowerTail>)
          return PowerTail{x.exponent, 2.0 * x.onset, w * x.constant * std::pow(2.0, x.exponent)};
        else
          return ExponentialTail{0.5 * x.rate, 2.0 * x.onset, w * x.constant};
      },
      d);
}

// w int_{|u| > |x|/2} env(u) du.
std::optional<DecayInfo> halved_mass(const DecayInfo& d, double w) {
  if (const auto* c = std::get_if<CompactSupport>(&d)) return CompactSupport{-2.0 * radius(*c), 2.0 * radius(*c)};
  if (const auto* e = std::get_if<ExponentialTail>(&d))
    return ExponentialTail{0.5 * e->rate, 2.0 * e->onset, w * 2.0 * e->constant / e->rate};
  const auto& p = std::get<PowerTail>(d);
  if (!(p.exponent > 1.0)) return std::nullopt;
  const double k = p.exponent - 1.0;
  return PowerTail{k, 2.0 * p.onset, w * 2.0 * p.constant * std::pow(2.0, k) / k};
}

// envelope of |t g(t)|
DecayInfo moment_decay(const DecayInfo& d) {
  return std::visit(
      [](const auto& x) -> DecayInfo {
        using D = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<D, CompactSupport>)
          return x;
        else if constexpr (std::is_same_v<D, PowerTail>)
          return PowerTail{x.exponent - 1.0, std::max(x.onset, 1.0), x.constant};
        else
          // t e^{-rt} <= (2/(re)) e^{-rt/2}
          return ExponentialTail{0.5 * x.rate, x.onset, x.constant * 2.0 / (x.rate * std::exp(1.0))};
      },
      d);
}

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double l1_norm(const TestFunction& f) { return lp_norm(f, 1.0, 1e-8); }

void require_lp(const TestFunction& f, double p) {
  if (f.in_lp(p)) return;
  std::ostringstream os;
  os << f.id << " is in L^p only for p in " << f.lp.describe() << ", not p = " << p;
  throw HypothesisError("f in L^p", os.str());
}

// Tail pieces int_T^inf e^{i nu t} A(t) dt for one side of a tail model.
QuadratureResult side_transform(const std::vector<TailComponent>& side, double onset, double s, double sign,
                                double tol, const std::string& id) {
  QuadratureResult out;
  std::size_t n = 0;
  for (const auto& c : side) n += c.modes.size();
  if (n == 0) return out;
  const double share = tol / static_cast<double>(n);
  for (const auto& c : side) {
    for (const auto& m : c.modes) {
      const double nu = m.frequency - sign * s;
      QuadratureResult r;
      if (nu != 0.0) {
        r = integrate_fourier_tail(c.amplitude, nu, onset, share / std::max(1.0, std::abs(m.coefficient)));
      } else {
        if (!(c.bound_exponent > 1.0))
          throw HypothesisError("g in L^1", id + " has a non-oscillating tail that is not integrable at this s");
        const RealFn amp = c.amplitude;
        r = integrate_power_tail([amp](double t) -> Complex { return amp(t); }, onset, c.bound_constant,
                                 c.bound_exponent, share / std::max(1.0, std::abs(m.coefficient)));
      }
      out += m.coefficient * r;
    }
  }
  return out;
}

// int |s|^e |K(s)| ds.
VariationResult abs_moment(const BVFunction& K, double e, double tol) {
  VariationResult out;
  if (!K.decay) {
    out.divergent = true;
    out.reason = "no decay information";
    out.value = kInf;
    return out;
  }
  double T = 1.0;
  for (double b : K.breakpoints) T = std::max(T, std::abs(b));
  double tail = 0.0;
  const DecayInfo& d = *K.decay;
  if (const auto* c = std::get_if<CompactSupport>(&d)) {
    T = std::max(T, radius(*c));
  } else if (const auto* x = std::get_if<ExponentialTail>(&d)) {
    T = std::max(T, x->onset);
    auto bound = [&](double t) {
      const double r = x->rate - e / t;
      return r > 0.0 ? 2.0 * x->constant * std::pow(t, e) * std::exp(-x->rate * t) / r : kInf;
    };
    while (!(bound(T) <= 0.25 * tol)) T *= 1.5;
    tail = bound(T);
  } else {
    const auto& p = std::get<PowerTail>(d);
    const double k = p.exponent - 1.0 - e;
    if (!(k > 0.0)) {
      std::ostringstream os;
      os << "|K| decays like |s|^-" << p.exponent << ", so int |s|^" << e << " |K| diverges";
      out.divergent = true;
      out.reason = os.str();
      out.value = kInf;
      return out;
    }
    T = std::max(T, p.onset);
    auto bound = [&](double t) { return 2.0 * p.constant * std::pow(t, -k) / k; };
    for (int i = 0; i < 200 && !(bound(T) <= 0.25 * tol); ++i) T *= 2.0;
    tail = bound(T);
  }
  std::vector<double> cuts = {-T};
  for (double b : K.breakpoints)
    if (b > -T && b < T) cuts.push_back(b);
  cuts.push_back(T);
  const double share = 0.5 * tol / static_cast<double>(cuts.size());
  QuadratureResult core;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const ComplexFn v = K.pieces[K.piece_index(0.5 * (lo + hi))].value;
    std::vector<double> hints;
    if (lo < 0.0 && hi > 0.0) hints.push_back(0.0);
    core += integrate_finite([v, e](double s) -> Complex { return std::pow(std::abs(s), e) * std::abs(v(s)); }, lo,
                             hi, share, hints);
  }
  out.value = core.value.real();
  out.abs_error_estimate = core.abs_error_estimate + tail;
  return out;
}

EqualityReport finish(std::string check, const QuadratureResult& lhs, const QuadratureResult& rhs, double budget) {
  EqualityReport r;
  r.check = std::move(check);
  r.lhs = lhs.value;
  r.rhs = rhs.value;
  r.abs_diff = std::abs(lhs.value - rhs.value);
  r.budget = budget;
  r.lhs_error = lhs.abs_error_estimate;
  r.rhs_error = rhs.abs_error_estimate;
  r.converged = lhs.converged && rhs.converged;
  r.pass = r.converged && r.abs_diff <= budget;
  return r;
}

double growth_factor(const TestFunction& f, double p) {
  const Exponents ex(p);
  const double c = std::isinf(ex.q()) ? 1.0 : cq(ex.q(), 1e-10).value;
  return c * lp_norm(f, p, 1e-10);
}

// t -> t g(t)
TestFunction first_moment(const TestFunction& g) {
  TestFunction r;
  r.id = "t*" + g.id;
  const ComplexFn e = g.eval;
  r.eval = [e](double t) { return t * e(t); };
  r.decay = moment_decay(g.decay);
  r.lp = g.h.integrable ? LpRange::below(1.0, true) : LpRange::none();
  r.singular_points = g.singular_points;
  r.real_valued = g.real_valued;
  r.frequency = g.frequency;
  return r;
}

// ghat as a smooth BV function: value fhat_direct(g), derivative -i fhat_direct(t g).
BVFunction transform_bv(const TestFunction& g, double tol) {
  const auto gp = std::make_shared<const TestFunction>(g);
  const auto hp = std::make_shared<const TestFunction>(first_moment(g));
  BVFunction r = smooth_bv(
      "hat(" + g.id + ")", [gp, tol](double s) { return fhat_direct(*gp, s, tol).value; },
      [hp, tol](double s) { return -kI * fhat_direct(*hp, s, tol).value; });
  r.sup_bound = l1_norm(g);
  r.derivative_sup_bound = l1_norm(*hp);
  return r;
}

// int |s|^e |g(s)| ds < inf from the decay envelope alone.
bool moment_finite(const TestFunction& g, double e) {
  if (!g.in_lp(1.0)) return false;
  if (const auto* p = std::get_if<PowerTail>(&g.decay)) return p->exponent - e > 1.0;
  return true;
}

}  // namespace

QuadratureResult fhat_direct(const TestFunction& g, double s, double tol) {
  const bool integrable = g.in_lp(1.0);
  if (!g.tail) {
    if (!integrable) throw HypothesisError("g in L^1", g.id + " is not integrable and has no tail model");
    LineHints hints;
    hints.breakpoints = g.singular_points;
    hints.frequency = std::abs(s) + g.frequency;
    const ComplexFn e = g.eval;
    return integrate_line([e, s](double t) { return std::exp(-kI * s * t) * e(t); }, g.decay, tol, hints);
  }
  const OscillatoryTail& tail = *g.tail;
  if (!integrable) {
    // improper integral only where no tail mode resonates with e^{-ist}
    bool still = s != 0.0;
    for (const auto* side : {&tail.positive, &tail.negative})
      for (const auto& c : *side)
        for (const auto& m : c.modes) still = still && m.frequency == 0.0;
    if (!still) throw HypothesisError("g in L^1", g.id + " is not integrable");
  }
  const double T = tail.onset;
  std::vector<double> bps;
  for (double x : g.singular_points)
    if (x > -T && x < T) bps.push_back(x);
  const double w = std::abs(s) + g.frequency;
  if (w > 0.0) {
    const double step = kPi / w;
    for (double x = -T + step; x < T; x += step) bps.push_back(x);
  }
  bps = sorted_unique(bps);
  const ComplexFn e = g.eval;
  QuadratureResult out = integrate_finite([e, s](double t) { return std::exp(-kI * s * t) * e(t); }, -T, T, 0.5 * tol,
                                          bps, kDefaultSubdivisions + 4 * bps.size());
  out += side_transform(tail.positive, T, s, 1.0, 0.25 * tol, g.id);
  out += side_transform(tail.negative, T, s, -1.0, 0.25 * tol, g.id);
  return out;
}

QuadratureResult convolve(const TestFunction& f, const TestFunction& g, double x, double tol) {
  if (!((f.in_lp(1.0) && !g.lp.empty) || (g.in_lp(1.0) && !f.lp.empty)))
    throw HypothesisError("L^p * L^1", "neither " + f.id + " nor " + g.id + " is integrable");
  const ComplexFn fe = f.eval, ge = g.eval;
  ComplexFn h = [fe, ge, x](double t) {
    const Complex a = fe(t);
    return a == 0.0 ? Complex(0.0) : a * ge(x - t);
  };
  std::vector<double> bps = f.singular_points;
  for (double y : g.singular_points) bps.push_back(x - y);
  bps.push_back(x);
  add_scale_points(bps, 0.0, onset_of(f.decay));
  add_scale_points(bps, x, onset_of(g.decay));
  bps = sorted_unique(bps);

  const auto* fc = std::get_if<CompactSupport>(&f.decay);
  const auto* gc = std::get_if<CompactSupport>(&g.decay);
  if (fc || gc) {
    double lo = -kInf, hi = kInf;
    if (fc) lo = fc->lo, hi = fc->hi;
    if (gc) lo = std::max(lo, x - gc->hi), hi = std::min(hi, x - gc->lo);
    if (!(lo < hi)) return {};
    if (std::isfinite(lo) && std::isfinite(hi)) return integrate_finite(h, lo, hi, tol, bps);
  }
  std::optional<DecayInfo> env;
  if (std::isfinite(g.sup_bound)) env = stronger(env, scaled(f.decay, g.sup_bound));
  const DecayInfo moved = shifted_decay(reflected(g.decay), x);
  if (std::isfinite(f.sup_bound) && finite(moved)) env = stronger(env, scaled(moved, f.sup_bound));
  if (!env) throw QuadratureError("convolve: no envelope for f(t) g(x - t); both factors are unbounded");
  LineHints hints;
  hints.breakpoints = bps;
  hints.frequency = f.frequency + g.frequency;
  return integrate_line(h, *env, tol, hints);
}

TestFunction convolution_function(const TestFunction& f, const TestFunction& g, double tol) {
  const bool f1 = f.in_lp(1.0), g1 = g.in_lp(1.0);
  if (!((f1 && !g.lp.empty) || (g1 && !f.lp.empty)))
    throw HypothesisError("L^p * L^1", "neither " + f.id + " nor " + g.id + " is integrable");
  const double nf = f1 ? l1_norm(f) : kInf;
  const double ng = g1 ? l1_norm(g) : kInf;

  TestFunction r;
  r.id = "conv(" + f.id + "," + g.id + ")";
  const auto fp = std::make_shared<const TestFunction>(f);
  const auto gp = std::make_shared<const TestFunction>(g);
  r.eval = [fp, gp, tol](double x) { return convolve(*fp, *gp, x, tol).value; };

  const auto* fc = std::get_if<CompactSupport>(&f.decay);
  const auto* gc = std::get_if<CompactSupport>(&g.decay);
  if (fc && gc) {
    r.decay = CompactSupport{fc->lo + gc->lo, fc->hi + gc->hi};
  } else if (fc && f1 && finite(shifted_decay(g.decay, radius(*fc)))) {
    r.decay = scaled(shifted_decay(g.decay, radius(*fc)), nf);
  } else if (gc && g1 && finite(shifted_decay(f.decay, radius(*gc)))) {
    r.decay = scaled(shifted_decay(f.decay, radius(*gc)), ng);
  } else {
    // split at |t| = |x|/2: one factor is evaluated at least |x|/2 out
    std::optional<DecayInfo> near_f, near_g;
    if (g1) near_f = stronger(near_f, halved(f.decay, ng));
    if (f1 && std::isfinite(g.sup_bound)) near_f = stronger(near_f, halved_mass(f.decay, g.sup_bound));
    if (f1) near_g = stronger(near_g, halved(g.decay, nf));
    if (g1 && std::isfinite(f.sup_bound)) near_g = stronger(near_g, halved_mass(g.decay, f.sup_bound));
    if (!near_f || !near_g) throw QuadratureError("convolution_function: no decay envelope for " + r.id);
    r.decay = combine_decay(*near_f, 1.0, *near_g, 1.0);
  }

  if (f1 && g1)
    r.lp = f.lp.hi > g.lp.hi || (f.lp.hi == g.lp.hi && f.lp.hi_closed) ? f.lp : g.lp;
  else
    r.lp = g1 ? f.lp : g.lp;
  for (double a : f.singular_points)
    for (double b : g.singular_points) r.singular_points.push_back(a + b);
  r.singular_points = sorted_unique(r.singular_points);
  r.real_valued = f.real_valued && g.real_valued;
  r.sup_bound = std::min(nf * g.sup_bound, f.sup_bound * ng);
  if (!std::isfinite(r.sup_bound)) r.sup_bound = kInf;
  r.frequency = std::max(f.frequency, g.frequency);
  r.g.vanishes_at_infinity = true;
  r.g.integrable = f1 && g1;
  return r;
}

EqualityReport exchange_check(const TestFunction& f, const BVFunction& g, double p, double tol) {
  if (!g.vanishes_at_infinity) throw HypothesisError("g vanishes at infinity", g.id + " has no limit 0 at infinity");
  const VariationResult W = weighted_variation(g, p, 1e-8);
  if (W.divergent) throw HypothesisError("finite weighted variation", "weighted variation divergent: " + W.reason);
  const VariationResult V = moment_variation(g, 0.0, 1e-8);
  if (V.divergent) throw HypothesisError("g of bounded variation", V.reason);
  require_lp(f, p);
  if (!g.as_function) throw HypothesisError("g in L^1", g.id + " has no pointwise form for its classical transform");

  const QuadratureResult lhs = integrate_fhat_g_line(f, g, p, 0.25 * tol);

  const auto gp = g.as_function;
  const bool g_l1 = gp->in_lp(1.0);
  // |ghat| <= ||g||_1, or V g / |s| for |s| >= 1
  const double ghat_sup = g_l1 ? l1_norm(*gp) : V.value;
  DecayInfo env = scaled(f.decay, ghat_sup);
  if (!g_l1) {
    if (auto* pw = std::get_if<PowerTail>(&env)) pw->onset = std::max(pw->onset, 1.0);
    if (auto* ex = std::get_if<ExponentialTail>(&env)) ex->onset = std::max(ex->onset, 1.0);
  }
  const double inner = 1e-3 * tol;
  const ComplexFn fe = f.eval;
  ComplexFn h = [fe, gp, inner](double t) {
    const Complex a = fe(t);
    return a == 0.0 ? Complex(0.0) : a * fhat_direct(*gp, t, inner).value;
  };
  LineHints hints;
  hints.breakpoints = f.singular_points;
  hints.breakpoints.push_back(0.0);
  hints.breakpoints = sorted_unique(hints.breakpoints);
  double reach = 0.0;
  for (double b : g.breakpoints) reach = std::max(reach, std::abs(b));
  hints.frequency = f.frequency + reach;
  const QuadratureResult rhs = integrate_line(h, env, 0.25 * tol, hints);

  EqualityReport r = finish("exchange", lhs, rhs, tol);
  r.bound = growth_factor(f, p) * W.value;
  return r;
}

KernelVariant parse_kernel(const std::string& name) {
  if (name == "fejer" || name == "cesaro_fejer") return KernelVariant::CesaroFejer;
  if (name == "poisson" || name == "abel_poisson") return KernelVariant::AbelPoisson;
  if (name == "gauss_weierstrass" || name == "gauss") return KernelVariant::GaussWeierstrass;
  if (name == "dirichlet") return KernelVariant::Dirichlet;
  throw std::invalid_argument("unknown kernel '" + name + "'; available: fejer poisson gauss_weierstrass dirichlet");
}

std::string kernel_name(KernelVariant v) {
  switch (v) {
    case KernelVariant::CesaroFejer: return "fejer";
    case KernelVariant::AbelPoisson: return "poisson";
    case KernelVariant::GaussWeierstrass: return "gauss_weierstrass";
    case KernelVariant::Dirichlet: return "dirichlet";
  }
  return "?";
}

std::string InversionHypotheses::failures() const {
  std::vector<std::string> f;
  if (!psi_integrable) f.push_back("psi in L^1");
  if (!unit_mass) f.push_back("unit mass");
  if (!absolutely_continuous) f.push_back("K absolutely continuous");
  if (!moment_finite) f.push_back("moment of K");
  if (!derivative_moment_finite) f.push_back("moment of K'");
  std::string out;
  for (const auto& s : f) out += (out.empty() ? "" : ", ") + s;
  return out;
}

KernelFamily make_kernel(KernelVariant variant, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("make_kernel: a must be positive");
  KernelFamily k{variant, a, {}, {}, {}};
  switch (variant) {
    case KernelVariant::CesaroFejer:
      k.K = fejer_kernel(a);
      k.psi = builtin("fejer_psi", a);
      break;
    case KernelVariant::AbelPoisson:
      k.K = poisson_kernel(a);
      k.psi = builtin("poisson_psi", a);
      break;
    case KernelVariant::GaussWeierstrass:
      k.K = gauss_weierstrass_kernel(a);
      k.psi = builtin("gauss_weierstrass_psi", a);
      break;
    case KernelVariant::Dirichlet:
      k.K = dirichlet_kernel(a);
      k.psi = builtin("dirichlet_psi", a);
      break;
  }
  k.flags = inversion_hypotheses(k, 1.0);
  return k;
}

InversionHypotheses inversion_hypotheses(const KernelFamily& k, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("inversion_hypotheses: need p >= 1");
  InversionHypotheses h;
  h.p = p;
  h.psi_integrable = k.psi.in_lp(1.0);
  if (h.psi_integrable) {
    // the admissible psi_a are nonnegative, so ||psi_a||_1 is the mass
    h.mass = lp_norm(k.psi, 1.0, 1e-13);
    h.unit_mass = std::abs(h.mass - 1.0) <= 1e-10;
  } else {
    h.mass = std::numeric_limits<double>::quiet_NaN();
  }
  h.absolutely_continuous = k.K.absolutely_continuous;
  const VariationResult m = abs_moment(k.K, 1.0 / p, 1e-9);
  h.moment = m.value;
  h.moment_finite = !m.divergent;
  if (h.absolutely_continuous) {
    const VariationResult d = moment_variation(k.K, 1.0 / p, 1e-9);
    h.derivative_moment = d.value;
    h.derivative_moment_finite = !d.divergent;
  } else {
    h.derivative_moment = kInf;
  }
  return h;
}

QuadratureResult inversion_apply(const TestFunction& f, const KernelFamily& k, double x, InversionRoute route,
                                 double p, double tol) {
  if (!k.flags.all())
    throw HypothesisError("summability kernel hypotheses", kernel_name(k.variant) + " fails: " + k.flags.failures());
  require_lp(f, p);
  if (route == InversionRoute::Convolution) return convolve(f, k.psi, x, tol);
  const BVFunction g = modulate(k.K, x);
  const double two_pi = 2.0 * kPi;
  QuadratureResult r;
  if (k.variant == KernelVariant::CesaroFejer) {
    // K_a(+-1/a) = 0, so the boundary terms drop out
    r = integrate_fhat_g_finite(f, g, -1.0 / k.a, 1.0 / k.a, two_pi * tol);
  } else {
    r = integrate_fhat_g_line(f, g, p, two_pi * tol);
  }
  return (1.0 / two_pi) * r;
}

TestFunction inversion_residual(const TestFunction& f, const KernelFamily& k) {
  TestFunction r = combine(1.0, f, -1.0, convolution_function(f, k.psi));
  r.id = f.id + "-I[" + kernel_name(k.variant) + "]";
  return r;
}

std::vector<SweepRow> inversion_sweep(const TestFunction& f, KernelVariant variant, double p,
                                      const std::vector<double>& a_list, double rel_tol) {
  require_lp(f, p);
  std::vector<KernelFamily> kernels;
  for (double a : a_list) {
    kernels.push_back(make_kernel(variant, a));
    const InversionHypotheses& h = kernels.back().flags;
    if (!h.all())
      throw HypothesisError("summability kernel hypotheses", kernel_name(variant) + " fails: " + h.failures());
  }
  std::vector<SweepRow> rows(a_list.size());
  parallel_for(a_list.size(), [&](std::size_t i) {
    const NormResult n = lp_norm_checked(inversion_residual(f, kernels[i]), p, rel_tol);
    rows[i] = {a_list[i], n.value, n.abs_error_estimate, n.converged};
  });
  return rows;
}

PropositionReport proposition_checker(const TestFunction& g) {
  PropositionReport r;
  const bool g_l1 = g.g.integrable || g.in_lp(1.0);
  const bool h_l1 = g.h.integrable;
  auto lp_between = [](const LpRange& l) { return l.intersects(1.0, false, 2.0, true); };
  r.derivative_lp = g_l1 && g.g.absolutely_continuous && g.g.vanishes_at_infinity && lp_between(g.g.derivative_lp);
  r.moment_derivative_lp =
      g_l1 && h_l1 && g.h.absolutely_continuous && g.h.vanishes_at_infinity && lp_between(g.h.derivative_lp);
  r.derivative_bv = g_l1 && g.g.absolutely_continuous && g.g.derivative_lp.contains(1.0) && g.g.derivative_bv;
  r.moment_derivative_bv =
      g_l1 && h_l1 && g.h.absolutely_continuous && g.h.derivative_lp.contains(1.0) && g.h.derivative_bv;
  r.fhat_in_l1 = r.derivative_lp || r.derivative_bv;
  r.fhat_in_bv = r.moment_derivative_lp || r.moment_derivative_bv;
  r.closed_form_bv = g.fhat_bv_closed_form;
  r.sufficient_only = r.closed_form_bv && !r.fhat_in_bv;
  if (r.derivative_lp) r.triggered.push_back("derivative in L^p, 1 < p <= 2");
  if (r.moment_derivative_lp) r.triggered.push_back("moment derivative in L^p, 1 < p <= 2");
  if (r.derivative_bv) r.triggered.push_back("derivative integrable and of bounded variation");
  if (r.moment_derivative_bv) r.triggered.push_back("moment derivative integrable and of bounded variation");
  return r;
}

EqualityReport convolution_exchange_check(const TestFunction& f, const TestFunction& g1, const BVFunction& g2,
                                          double p, double tol) {
  if (!g2.vanishes_at_infinity) throw HypothesisError("g2 vanishes at infinity", g2.id + " has no limit 0 at infinity");
  const VariationResult W = weighted_variation(g2, p, 1e-8);
  if (W.divergent) throw HypothesisError("finite weighted variation", "weighted variation divergent: " + W.reason);
  if (!g1.in_lp(1.0)) throw HypothesisError("g1 in L^1", g1.id + " is not integrable");
  const PropositionReport pr = proposition_checker(g1);
  if (!(pr.fhat_in_bv || g1.fhat_bv_closed_form))
    throw HypothesisError("g1 hat of bounded variation", "no clause or closed form certifies it for " + g1.id);
  if (!g1.h.integrable)
    throw HypothesisError("g1 hat of bounded variation", "t g1(t) is not integrable, so ghat' is not available");
  require_lp(f, p);

  const TestFunction fg = convolution_function(f, g1);
  const QuadratureResult lhs = integrate_fhat_g_line(fg, g2, p, 0.25 * tol);
  const BVFunction prod = product(transform_bv(g1, 1e-3 * tol), g2);
  const QuadratureResult rhs = integrate_fhat_g_line(f, prod, p, 0.25 * tol);
  return finish("convolution_product", lhs, rhs, tol);
}

BVFunction convolution_bv(const BVFunction& g1, const TestFunction& g2, double tol) {
  if (!g1.decay || !std::holds_alternative<CompactSupport>(*g1.decay))
    throw std::invalid_argument("convolution_bv: g1 must have compact support");
  if (!g2.in_lp(1.0)) throw HypothesisError("g2 in L^1", g2.id + " is not integrable");
  const CompactSupport sup = std::get<CompactSupport>(*g1.decay);
  const double R = radius(sup);
  const double V1 = total_variation(g1, sup.lo - 1.0, sup.hi + 1.0, 1e-10);
  const auto a = std::make_shared<const BVFunction>(g1);
  const auto b = std::make_shared<const TestFunction>(g2);

  auto value = [a, b, sup, tol](double x) -> Complex {
    std::vector<double> cuts = {sup.lo};
    for (double t : a->breakpoints)
      if (t > sup.lo && t < sup.hi) cuts.push_back(t);
    cuts.push_back(sup.hi);
    Complex total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const ComplexFn v = a->pieces[a->piece_index(0.5 * (cuts[i] + cuts[i + 1]))].value;
      std::vector<double> bps;
      for (double y : b->singular_points) bps.push_back(x - y);
      bps = sorted_unique(bps);
      const ComplexFn ge = b->eval;
      total += integrate_finite([v, ge, x](double t) { return v(t) * ge(x - t); }, cuts[i], cuts[i + 1], tol, bps).value;
    }
    return total;
  };
  // (g1 * g2)' = int g2(x - t) dg1(t)
  auto derivative = [a, b, sup, tol](double x) -> Complex {
    const ComplexFn ge = b->eval;
    return stieltjes([ge, x](double t) { return ge(x - t); }, *a, sup.lo - 1.0, sup.hi + 1.0, tol).value;
  };
  BVFunction r = smooth_bv("conv(" + g1.id + "," + g2.id + ")", value, derivative);
  const double n1 = abs_moment(g1, 0.0, 1e-10).value;
  const double n2 = l1_norm(g2);
  r.decay = scaled(shifted_decay(g2.decay, R), n1);
  r.derivative_decay = scaled(shifted_decay(g2.decay, R), V1);
  r.sup_bound = std::min(n1 * g2.sup_bound, g1.sup_bound * n2);
  r.derivative_sup_bound = V1 * g2.sup_bound;
  r.vanishes_at_infinity = true;
  if (g1.as_function) r.as_function = std::make_shared<const TestFunction>(convolution_function(*g1.as_function, g2));
  return r;
}

DoubleKernelReport double_kernel_check(const TestFunction& f, const BVFunction& g1, const TestFunction& g2, double p,
                                       double tol) {
  const VariationResult W1 = weighted_variation(g1, p, 1e-8);
  if (W1.divergent) throw HypothesisError("finite weighted variation", "weighted variation divergent: " + W1.reason);
  if (!g1.as_function || !g1.as_function->in_lp(1.0)) throw HypothesisError("g1 in L^1", g1.id + " is not integrable");
  if (!g2.in_lp(1.0)) throw HypothesisError("g2 in L^1", g2.id + " is not integrable");
  if (!moment_finite(g2, 1.0 / p))
    throw HypothesisError("finite moment of g2", "int |s|^{1/p} |g2(s)| ds is not finite for " + g2.id);
  require_lp(f, p);

  DoubleKernelReport out;
  const BVFunction conv = convolution_bv(g1, g2);
  const QuadratureResult lhs = integrate_fhat_g_line(f, conv, p, 0.25 * tol);

  const auto h1 = g1.as_function;
  const auto h2 = std::make_shared<const TestFunction>(g2);
  const double inner = 1e-3 * tol;
  const ComplexFn fe = f.eval;
  ComplexFn h = [fe, h1, h2, inner](double t) {
    const Complex a = fe(t);
    if (a == 0.0) return Complex(0.0);
    return a * fhat_direct(*h1, t, inner).value * fhat_direct(*h2, t, inner).value;
  };
  LineHints hints;
  hints.breakpoints = f.singular_points;
  hints.frequency = f.frequency;
  for (double b : g1.breakpoints) hints.frequency = std::max(hints.frequency, f.frequency + std::abs(b));
  const DecayInfo env = scaled(f.decay, l1_norm(*h1) * l1_norm(g2));
  const QuadratureResult rhs = integrate_line(h, env, 0.25 * tol, hints);

  out.equality = finish("double_kernel", lhs, rhs, tol);
  const VariationResult V = moment_variation(conv, 0.0, 1e-6);
  const VariationResult Wc = moment_variation(conv, 1.0 / p, 1e-6);
  out.variation = V.value;
  out.variation_bound = moment_variation(g1, 0.0, 1e-10).value * l1_norm(g2);
  out.weighted_variation = Wc.value;
  out.variation_bound_holds = !V.divergent && V.value <= out.variation_bound + V.abs_error_estimate;
  return out;
}

}  // namespace lpf

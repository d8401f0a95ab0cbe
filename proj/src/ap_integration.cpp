#include "lpfourier/ap_integration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <sstream>

#include "lpfourier/constants.hpp"
#include "lpfourier/lp_norm.hpp"
#include "lpfourier/parallel.hpp"
#include "lpfourier/psif.hpp"

namespace lpf {

namespace {

const Complex kI(0.0, 1.0);

struct Segment {
  double lo;
  double hi;
  std::size_t piece;
};

// Pieces of g cut to [a, b].
std::vector<Segment> segments(const BVFunction& g, double a, double b) {
  std::vector<Segment> out;
  double lo = a;
  std::size_t idx = g.piece_index(a);
  // a itself may be a breakpoint; piece_index then already points past it
  for (std::size_t i = idx; i < g.breakpoints.size() && g.breakpoints[i] < b; ++i) {
    if (g.breakpoints[i] > lo) out.push_back({lo, g.breakpoints[i], i});
    lo = std::max(lo, g.breakpoints[i]);
    idx = i + 1;
  }
  if (b > lo) out.push_back({lo, b, idx});
  return out;
}

// Sub-intervals of at most `len`, so that parallel workers get comparable loads.
std::vector<Segment> chunked(const std::vector<Segment>& segs, double len) {
  std::vector<Segment> out;
  for (const auto& s : segs) {
    const int n = std::max(1, static_cast<int>(std::ceil((s.hi - s.lo) / len)));
    for (int k = 0; k < n; ++k) {
      const double lo = s.lo + (s.hi - s.lo) * k / n;
      const double hi = k + 1 == n ? s.hi : s.lo + (s.hi - s.lo) * (k + 1) / n;
      out.push_back({lo, hi, s.piece});
    }
  }
  return out;
}

// Jump contributions weight(s) * (inside part of the jump) over the breakpoints in [a, b].
template <class Fn>
void for_each_jump(const BVFunction& g, double a, double b, Fn&& fn) {
  for (std::size_t i = 0; i < g.breakpoints.size(); ++i) {
    const double s = g.breakpoints[i];
    if (s < a || s > b) continue;
    const BVJump& j = g.jumps[i];
    Complex d;
    if (s == a && s == b)
      d = 0.0;
    else if (s == a)
      d = j.right - j.at;
    else if (s == b)
      d = j.at - j.left;
    else
      d = j.right - j.left;
    if (d != 0.0) fn(s, d);
  }
}

std::vector<double> interior_hints(double lo, double hi) {
  std::vector<double> h;
  if (lo < 0.0 && hi > 0.0) h.push_back(0.0);
  return h;
}

QuadratureResult weighted_piece_variation(const BVFunction& g, double e, double a, double b, double tol) {
  QuadratureResult total;
  const auto segs = segments(g, a, b);
  for (const auto& s : segs) {
    const ComplexFn d = g.pieces[s.piece].derivative;
    ComplexFn w = [d, e](double x) -> Complex {
      const double v = std::abs(d(x));
      return e == 0.0 ? v : std::pow(std::abs(x), e) * v;
    };
    std::vector<double> hints = interior_hints(s.lo, s.hi);
    // geometric points keep long power-law stretches well resolved
    if (s.lo >= 1.0) hints = geometric_points(s.lo, s.hi);
    if (s.hi <= -1.0)
      for (double x : geometric_points(-s.hi, -s.lo)) hints.push_back(-x);
    std::sort(hints.begin(), hints.end());
    total += integrate_finite(w, s.lo, s.hi, tol / static_cast<double>(segs.size()), hints);
  }
  for_each_jump(g, a, b, [&](double s, Complex d) {
    total.value += (e == 0.0 ? 1.0 : std::pow(std::abs(s), e)) * std::abs(d);
  });
  return total;
}

// Bound on int_{|s|>T} |s|^e |g'(s)| ds from the derivative envelope, for T past its onset.
struct TailBound {
  double value = kInf;
  bool exact = false;
};

TailBound derivative_tail(const BVFunction& g, double e, double T) {
  const DecayInfo& d = *g.derivative_decay;
  if (const auto* c = std::get_if<CompactSupport>(&d)) {
    if (T >= std::max(std::abs(c->lo), std::abs(c->hi))) return {0.0, true};
    return {};
  }
  if (g.power_tail && T >= g.power_tail->onset) {
    const auto& pt = *g.power_tail;
    const double k = pt.exponent - 1.0 - e;
    return {(std::abs(pt.positive) + std::abs(pt.negative)) * std::pow(T, -k) / k, true};
  }
  if (const auto* p = std::get_if<PowerTail>(&d)) {
    const double k = p->exponent - 1.0 - e;
    if (k <= 0.0 || T < p->onset) return {};
    return {2.0 * p->constant * std::pow(T, -k) / k, false};
  }
  const auto& x = std::get<ExponentialTail>(d);
  // s^e <= T^e e^{e(s-T)/T}
  if (T < x.onset || x.rate - e / T <= 0.0) return {};
  return {2.0 * x.constant * std::pow(T, e) * std::exp(-x.rate * T) / (x.rate - e / T), false};
}

double tail_onset(const BVFunction& g) {
  double t = 1.0;
  for (double b : g.breakpoints) t = std::max(t, std::abs(b));
  if (g.derivative_decay) {
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, CompactSupport>)
            t = std::max({t, std::abs(d.lo), std::abs(d.hi)});
          else
            t = std::max(t, d.onset);
        },
        *g.derivative_decay);
  }
  if (g.power_tail) t = std::max(t, g.power_tail->onset);
  return t;
}

bool has_infinite_jump(const BVFunction& g) {
  for (const auto& j : g.jumps)
    if (!is_finite(j.left) || !is_finite(j.right)) return true;
  return false;
}

// Psi_f with a shared record of whether every evaluation converged.
struct PsiEvaluator {
  struct State {
    std::atomic<bool> converged{true};
  };
  TestFunction f;
  double tol;
  std::shared_ptr<State> state = std::make_shared<State>();

  ComplexFn fn() const {
    return [f = f, tol = tol, st = state](double s) {
      const QuadratureResult r = psif(f, s, tol);
      if (!r.converged) st->converged = false;
      return r.value;
    };
  }
  bool converged() const { return state->converged; }
};

double growth_constant(const TestFunction& f, double p) {
  const Exponents ex(p);
  const double c = std::isinf(ex.q()) ? 1.0 : cq(ex.q(), 1e-8).value;
  return 1.001 * c * lp_norm(f, p, 1e-6);
}

// int_x^inf (1 - e^{-i sigma}) sigma^-d dsigma for x > 0.
class TailKernel {
 public:
  TailKernel(double d, double tol) : d_(d), tol_(tol) { at_one_ = far(1.0); }

  Complex operator()(double x) const {
    if (x >= 1.0) return far(x);
    ComplexFn g = [d = d_](double s) -> Complex {
      const double h = std::sin(0.5 * s);
      return (2.0 * h * h + kI * std::sin(s)) * std::pow(s, -d);
    };
    const std::vector<double> pts = geometric_points(x, 1.0);
    return integrate_finite(g, x, 1.0, tol_, pts).value + at_one_;
  }

 private:
  Complex far(double x) const {
    const double d = d_;
    const QuadratureResult osc =
        integrate_fourier_tail([d](double s) { return std::pow(s, -d); }, -1.0, x, tol_);
    return std::pow(x, 1.0 - d) / (d - 1.0) - osc.value;
  }

  double d_;
  double tol_;
  Complex at_one_;
};

}  // namespace

double total_variation(const BVFunction& g, double a, double b, double tol) {
  if (!(a < b)) throw std::invalid_argument("total_variation: need a < b");
  return weighted_piece_variation(g, 0.0, a, b, tol).value.real();
}

VariationResult moment_variation(const BVFunction& g, double e, double tol) {
  VariationResult out;
  if (has_infinite_jump(g)) {
    out.divergent = true;
    out.reason = "g has an infinite jump";
    out.value = kInf;
    return out;
  }
  if (!g.derivative_decay) {
    out.divergent = true;
    out.reason = "no decay information for g'";
    out.value = kInf;
    return out;
  }
  if (const auto* p = std::get_if<PowerTail>(&*g.derivative_decay)) {
    const double d = g.power_tail ? g.power_tail->exponent : p->exponent;
    if (d - 1.0 - e <= 0.0) {
      std::ostringstream os;
      os << "|g'| decays like |s|^-" << d << ", so int |s|^" << e << " |g'| diverges";
      out.divergent = true;
      out.reason = os.str();
      out.value = kInf;
      return out;
    }
  }
  double T = tail_onset(g) + 1.0;
  TailBound tb = derivative_tail(g, e, T);
  for (int k = 0; k < 200 && !tb.exact && !(tb.value <= 0.25 * tol); ++k) {
    T *= 1.5;
    tb = derivative_tail(g, e, T);
  }
  const QuadratureResult core = weighted_piece_variation(g, e, -T, T, 0.5 * tol);
  out.value = core.value.real() + (tb.exact ? tb.value : 0.0);
  out.abs_error_estimate = core.abs_error_estimate + (tb.exact ? 0.0 : tb.value);
  return out;
}

VariationResult weighted_variation(const BVFunction& g, double p, double tol) {
  if (!(p >= 1.0)) throw std::invalid_argument("weighted_variation: need p >= 1");
  return moment_variation(g, 1.0 / p, tol);
}

QuadratureResult stieltjes(const ComplexFn& F, const BVFunction& g, double a, double b, double tol) {
  if (!(a <= b)) throw std::invalid_argument("stieltjes: need a <= b");
  QuadratureResult total;
  if (a == b) return total;
  const auto parts = chunked(segments(g, a, b), 4.0);
  std::vector<QuadratureResult> res(parts.size());
  const double share = 0.5 * tol / static_cast<double>(std::max<std::size_t>(parts.size(), 1));
  parallel_for(parts.size(), [&](std::size_t i) {
    const Segment& s = parts[i];
    const ComplexFn d = g.pieces[s.piece].derivative;
    ComplexFn h = [&F, d](double x) -> Complex {
      const Complex dv = d(x);
      return dv == 0.0 ? Complex(0.0) : F(x) * dv;
    };
    res[i] = integrate_finite(h, s.lo, s.hi, share, interior_hints(s.lo, s.hi));
  });
  for (const auto& r : res) total += r;
  for_each_jump(g, a, b, [&](double s, Complex d) { total.value += F(s) * d; });
  return total;
}

DecayVerdict decay_check(const BVFunction& g, double p) {
  DecayVerdict v;
  if (!g.decay) {
    v.reason = "no decay information for g";
    return v;
  }
  if (std::holds_alternative<CompactSupport>(*g.decay)) {
    v.pass = true;
    v.reason = "compact support";
    return v;
  }
  if (std::holds_alternative<ExponentialTail>(*g.decay)) {
    v.pass = true;
    v.reason = "exponential decay";
    return v;
  }
  const double beta = std::get<PowerTail>(*g.decay).exponent;
  std::ostringstream os;
  if (p == 1.0) {
    v.pass = beta >= 1.0;
    os << "beta = " << beta << (v.pass ? " >= 1" : " < 1") << " at p = 1";
  } else {
    v.pass = beta > 1.0 / p;
    os << "beta = " << beta << (v.pass ? " > " : " <= ") << "1/p = " << 1.0 / p;
  }
  v.reason = os.str();
  return v;
}

QuadratureResult integrate_fhat_g_finite(const TestFunction& f, const BVFunction& g, double a, double b, double tol) {
  if (!(a < b)) throw std::invalid_argument("integrate_fhat_g_finite: need a < b");
  const double V = total_variation(g, a, b, 1e-8);
  const Complex ga = g(a), gb = g(b);
  if (!std::isfinite(V) || !is_finite(ga) || !is_finite(gb))
    throw HypothesisError("g of bounded variation", "g is unbounded or has infinite variation on [a, b]");
  const double weight = 1.0 + V + std::abs(ga) + std::abs(gb);
  PsiEvaluator psi{f, tol / (8.0 * weight)};
  const ComplexFn F = psi.fn();
  QuadratureResult st = stieltjes(F, g, a, b, 0.5 * tol);
  QuadratureResult out;
  out.value = F(b) * gb - F(a) * ga - st.value;
  out.abs_error_estimate = st.abs_error_estimate + psi.tol * weight;
  out.evaluations = st.evaluations;
  out.converged = st.converged && psi.converged();
  return out;
}

QuadratureResult power_tail_pairing(const TestFunction& f, double T, double d, int sign, double tol) {
  if (!(d > 1.0) || !(T > 0.0)) throw std::invalid_argument("power_tail_pairing: need d > 1 and T > 0");
  const auto J = std::make_shared<TailKernel>(d, 1e-2 * tol);
  const double sg = sign < 0 ? -1.0 : 1.0;
  // int_T^inf u_s(t) s^-d ds = t^{d-2} J(T t) / i for t > 0, conjugated for t < 0;
  // u_{-s}(t) = -u_s(-t) gives the other side
  ComplexFn k = [J, T, d, sg](double t) -> Complex {
    const double u = sg * t;
    if (u == 0.0) return d > 2.0 ? Complex(sg * std::pow(T, 2.0 - d) / (d - 2.0)) : Complex(kInf);
    const Complex v = std::pow(std::abs(u), d - 2.0) * (*J)(T * std::abs(u)) / kI;
    return sg * (u > 0.0 ? v : std::conj(v));
  };
  const double K = 2.0 * std::pow(T, 1.0 - d) / (d - 1.0);  // |k(t)| <= K / |t|
  const DecayInfo decay = std::visit(
      [K](const auto& x) -> DecayInfo {
        using D = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<D, CompactSupport>)
          return x;
        else if constexpr (std::is_same_v<D, PowerTail>)
          return PowerTail{x.exponent + 1.0, std::max(x.onset, 1.0), x.constant * K};
        else
          return ExponentialTail{x.rate, std::max(x.onset, 1.0), x.constant * K};
      },
      f.decay);
  LineHints hints;
  hints.breakpoints = f.singular_points;
  hints.breakpoints.push_back(0.0);
  std::sort(hints.breakpoints.begin(), hints.breakpoints.end());
  hints.breakpoints.erase(std::unique(hints.breakpoints.begin(), hints.breakpoints.end()), hints.breakpoints.end());
  const ComplexFn fe = f.eval;
  return integrate_line([fe, k](double t) { return fe(t) * k(t); }, decay, tol, hints);
}

QuadratureResult integrate_fhat_g_line(const TestFunction& f, const BVFunction& g, double p, double tol) {
  if (!f.in_lp(p)) {
    std::ostringstream os;
    os << f.id << " is in L^p only for p in " << f.lp.describe() << ", not p = " << p;
    throw HypothesisError("f in L^p", os.str());
  }
  const VariationResult V = moment_variation(g, 0.0, 1e-6);
  if (V.divergent) throw HypothesisError("g of bounded variation", V.reason);
  const DecayVerdict dv = decay_check(g, p);
  if (!dv.pass) throw HypothesisError("g = o(|x|^{-1/p}) at infinity", dv.reason);

  QuadratureResult out;
  double T = tail_onset(g) + 1.0;
  QuadratureResult tails;
  if (g.power_tail) {
    const auto& pt = *g.power_tail;
    const double share = pt.positive != 0.0 && pt.negative != 0.0 ? 0.125 * tol : 0.25 * tol;
    if (pt.positive != 0.0) tails += pt.positive * power_tail_pairing(f, T, pt.exponent, 1, share / std::abs(pt.positive));
    if (pt.negative != 0.0) tails += pt.negative * power_tail_pairing(f, T, pt.exponent, -1, share / std::abs(pt.negative));
  } else {
    const VariationResult W = weighted_variation(g, p, 1e-6);
    if (W.divergent) throw HypothesisError("finite weighted variation", "weighted variation divergent: " + W.reason);
    const double K = growth_constant(f, p);
    const double e = 1.0 / p;
    TailBound tb = derivative_tail(g, e, T);
    const double cap = 1e4 * T;
    while (!(K * tb.value <= 0.25 * tol) && T < cap) {
      T *= 1.25;
      tb = derivative_tail(g, e, T);
    }
    tails.abs_error_estimate = K * tb.value;
    tails.converged = K * tb.value <= 0.25 * tol;
  }
  PsiEvaluator psi{f, tol / (8.0 * (1.0 + V.value))};
  QuadratureResult core = stieltjes(psi.fn(), g, -T, T, 0.5 * tol);
  out = core + tails;
  out.value = -out.value;
  out.abs_error_estimate += psi.tol * (1.0 + V.value);
  out.converged = out.converged && psi.converged();
  return out;
}

QuadratureResult integrate_fhat_halfline_singular(const TestFunction& f, const BVFunction& g, double a, double p,
                                                  double tol) {
  if (!(a > 0.0)) throw std::invalid_argument("integrate_fhat_halfline_singular: need a > 0");
  if (!f.in_lp(p)) {
    std::ostringstream os;
    os << f.id << " is in L^p only for p in " << f.lp.describe() << ", not p = " << p;
    throw HypothesisError("f in L^p", os.str());
  }
  const Complex ga = g(a);
  if (!g.singular_at_zero) {
    // bounded near 0: Psi_f(0) = 0 removes the boundary term
    const double V = total_variation(g, 0.0, a, 1e-8);
    PsiEvaluator psi{f, tol / (8.0 * (1.0 + V + std::abs(ga)))};
    const ComplexFn F = psi.fn();
    QuadratureResult st = stieltjes(F, g, 0.0, a, 0.5 * tol);
    QuadratureResult out = st;
    out.value = F(a) * ga - st.value;
    out.abs_error_estimate += psi.tol * (1.0 + V + std::abs(ga));
    out.converged = out.converged && psi.converged();
    return out;
  }
  const SingularAtZero& sz = *g.singular_at_zero;
  const double gap = 1.0 / p - sz.exponent;
  if (!(gap > 0.0)) {
    std::ostringstream os;
    os << "singular exponent " << sz.exponent << " >= 1/p = " << 1.0 / p;
    throw HypothesisError("g = o(x^{-1/p}) at 0+", os.str());
  }
  double first = a;
  for (double b : g.breakpoints)
    if (b > 0.0) {
      first = std::min(first, b);
      break;
    }
  double eps = 0.5 * first;
  const double V = total_variation(g, eps, a, 1e-8);
  // Psi errors scale with s so that int_0 delta(t) |g'(t)| dt stays finite
  const double near = sz.derivative_constant * std::pow(a, -sz.exponent) / (1.0 - sz.exponent);
  const double base = tol / (8.0 * (1.0 + near + V + std::abs(ga)));
  auto state = std::make_shared<PsiEvaluator::State>();
  const TestFunction fc = f;
  ComplexFn F = [fc, base, a, state](double s) {
    const QuadratureResult r = psif(fc, s, base * std::min(1.0, std::abs(s) / a));
    if (!r.converged) state->converged = false;
    return r.value;
  };
  const double K = growth_constant(f, p);
  auto remainder = [&](double x) { return K * sz.derivative_constant * std::pow(x, gap) / gap; };

  QuadratureResult st = stieltjes(F, g, eps, a, 0.25 * tol);
  double budget = 0.25 * tol;
  for (int k = 0; k < 4000 && remainder(eps) > 0.25 * tol; ++k) {
    budget *= 0.5;
    st += stieltjes(F, g, 0.5 * eps, eps, std::max(budget, 1e-3 * tol * std::pow(0.5 * eps / a, gap)));
    eps *= 0.5;
  }
  QuadratureResult out = st;
  out.value = F(a) * ga - st.value;
  out.abs_error_estimate += remainder(eps) + base * (1.0 + near + V + std::abs(ga));
  out.converged = out.converged && state->converged && remainder(eps) <= 0.25 * tol;
  return out;
}

}  // namespace lpf

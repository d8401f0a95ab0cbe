#include "lpfourier/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

namespace lpf {

QuadratureResult& QuadratureResult::operator+=(const QuadratureResult& other) {
  value += other.value;
  abs_error_estimate += other.abs_error_estimate;
  evaluations += other.evaluations;
  converged = converged && other.converged;
  return *this;
}

QuadratureResult& QuadratureResult::operator*=(Complex c) {
  value *= c;
  abs_error_estimate *= std::abs(c);
  return *this;
}

QuadratureResult operator+(QuadratureResult a, const QuadratureResult& b) { return a += b; }
QuadratureResult operator*(Complex c, QuadratureResult r) { return r *= c; }

void validate(const DecayInfo& decay) {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CompactSupport>) {
          if (!(d.lo < d.hi)) throw std::invalid_argument("compact support needs lo < hi");
        } else {
          if (!(d.onset > 0.0)) throw std::invalid_argument("tail onset must be positive");
          if (!(d.constant >= 0.0) || !std::isfinite(d.constant))
            throw std::invalid_argument("tail constant must be finite and nonnegative");
          if constexpr (std::is_same_v<T, PowerTail>) {
            if (!(d.exponent > 0.0)) throw std::invalid_argument("power tail exponent must be positive");
          } else {
            if (!(d.rate > 0.0)) throw std::invalid_argument("exponential tail rate must be positive");
          }
        }
      },
      decay);
}

DecayInfo power_of(const DecayInfo& decay, double p) {
  return std::visit(
      [p](const auto& d) -> DecayInfo {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, CompactSupport>) {
          return d;
        } else if constexpr (std::is_same_v<T, PowerTail>) {
          return PowerTail{d.exponent * p, d.onset, std::pow(d.constant, p)};
        } else {
          return ExponentialTail{d.rate * p, d.onset, std::pow(d.constant, p)};
        }
      },
      decay);
}

std::vector<double> geometric_points(double from, double to) {
  std::vector<double> pts;
  if (!(from > 0.0)) return pts;
  for (double x = 2.0 * from; x < to; x *= 2.0) pts.push_back(x);
  return pts;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod abscissae (descending) and weights; Gauss weights for the 7-point rule
// on the odd-indexed abscissae plus the centre.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  Complex value;
  double error;
};

Segment gk15(const ComplexFn& f, double a, double b, std::size_t& evals) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<Complex, 15> fv;
  fv[7] = f(centre);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(centre - dx);
    fv[14 - j] = f(centre + dx);
  }
  evals += 15;

  Complex resk = fv[7] * kWgk[7];
  Complex resg = fv[7] * kWg[3];
  double resabs = std::abs(fv[7]) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const Complex pair = fv[j] + fv[14 - j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  const Complex mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

  const double h = std::abs(half);
  Segment s{a, b, resk * half, std::abs((resk - resg) * half)};
  resabs *= h;
  resasc *= h;
  // QUADPACK-style rescaling of the raw Kronrod-Gauss difference
  if (resasc != 0.0 && s.error != 0.0) s.error = resasc * std::min(1.0, std::pow(200.0 * s.error / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    s.error = std::max(50.0 * kEps * resabs, s.error);
  if (!is_finite(s.value) || !std::isfinite(s.error)) s.error = kInf;
  return s;
}

struct HeapEntry {
  double error;
  double a;
  std::size_t index;
};

struct HeapOrder {
  bool operator()(const HeapEntry& x, const HeapEntry& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie-break: leftmost first
  }
};

}  // namespace

QuadratureResult integrate_finite(const ComplexFn& f, double a, double b, double tol,
                                  std::span<const double> breakpoints,
                                  std::size_t max_subdivisions) {
  if (!(a < b)) throw std::invalid_argument("integrate_finite: need a < b");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_finite: need tol > 0");

  std::vector<double> cuts{a};
  {
    std::vector<double> inner;
    for (double x : breakpoints)
      if (x > a && x < b) inner.push_back(x);
    std::sort(inner.begin(), inner.end());
    for (double x : inner)
      if (x > cuts.back()) cuts.push_back(x);
    cuts.push_back(b);
  }

  std::size_t evals = 0;
  std::vector<Segment> segs;
  std::vector<bool> active;
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapOrder> heap;
  segs.reserve(cuts.size() + 2 * std::min<std::size_t>(max_subdivisions, 1u << 20));

  auto push = [&](const Segment& s) {
    segs.push_back(s);
    active.push_back(true);
    heap.push({s.error, s.a, segs.size() - 1});
  };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) push(gk15(f, cuts[i], cuts[i + 1], evals));

  auto totals = [&]() {
    Complex v{};
    double e = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i)
      if (active[i]) {
        v += segs[i].value;
        e += segs[i].error;
      }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  Complex best_value = value;
  double best_error = error;
  std::size_t subdivisions = 0;
  std::size_t since_resum = 0;

  while (best_error > tol && subdivisions < max_subdivisions && !heap.empty()) {
    const HeapEntry top = heap.top();
    heap.pop();
    const Segment parent = segs[top.index];
    const double mid = 0.5 * (parent.a + parent.b);
    const double width = parent.b - parent.a;
    if (width <= 4.0 * kEps * std::max(std::abs(parent.a), std::abs(parent.b)) || mid <= parent.a ||
        mid >= parent.b) {
      continue;  // cannot be resolved further; its error stays in the total
    }
    active[top.index] = false;
    const Segment left = gk15(f, parent.a, mid, evals);
    const Segment right = gk15(f, mid, parent.b, evals);
    push(left);
    push(right);
    ++subdivisions;
    // periodic resummation limits drift; amortised O(1) per step
    if (++since_resum >= 128 + segs.size() / 4 || !std::isfinite(error)) {
      since_resum = 0;
      std::tie(value, error) = totals();
    } else {
      value += left.value + right.value - parent.value;
      error += left.error + right.error - parent.error;
      if (error < 0.0) std::tie(value, error) = totals();
    }
    if (error < best_error) {
      best_value = value;
      best_error = error;
    }
  }
  std::tie(value, error) = totals();
  if (error < best_error) {
    best_value = value;
    best_error = error;
  }

  QuadratureResult r;
  r.value = best_value;
  r.abs_error_estimate = best_error;
  r.evaluations = evals;
  r.converged = is_finite(best_value) && best_error <= tol;
  return r;
}

namespace {

std::vector<double> merged_breakpoints(const std::vector<double>& user, double lo, double hi,
                                       double inner) {
  std::vector<double> bps;
  for (double x : user)
    if (x > lo && x < hi) bps.push_back(x);
  bps.push_back(0.0);
  if (inner > 0.0) {
    for (double x : geometric_points(inner, hi)) bps.push_back(x);
    for (double x : geometric_points(inner, -lo)) bps.push_back(-x);
    bps.push_back(inner);
    bps.push_back(-inner);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  return bps;
}

void add_lobe_points(std::vector<double>& bps, double lo, double hi, double frequency) {
  if (!(frequency > 0.0)) return;
  const double step = kPi / frequency;
  const double count = (hi - lo) / step;
  if (count < 20.0 || count > 2e5) return;
  for (double x = lo + step; x < hi; x += step) bps.push_back(x);
  std::sort(bps.begin(), bps.end());
}

std::string unreachable(double tol, const std::string& why) {
  std::ostringstream os;
  os << "tolerance " << tol << " unreachable: " << why;
  return os.str();
}

}  // namespace

QuadratureResult integrate_line(const ComplexFn& f, const DecayInfo& decay, double tol,
                                const LineHints& hints) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_line: need tol > 0");
  validate(decay);

  double lo = 0.0, hi = 0.0, tail = 0.0, inner = 0.0;
  if (const auto* c = std::get_if<CompactSupport>(&decay)) {
    lo = c->lo;
    hi = c->hi;
  } else if (const auto* e = std::get_if<ExponentialTail>(&decay)) {
    double r = e->onset;
    if (e->constant > 0.0) r = std::max(r, std::log(4.0 * e->constant / (e->rate * tol)) / e->rate);
    tail = 2.0 * e->constant * std::exp(-e->rate * r) / e->rate;
    lo = -r;
    hi = r;
  } else {
    const auto& pw = std::get<PowerTail>(decay);
    if (pw.exponent <= 1.0)
      throw QuadratureError(unreachable(tol, "power tail with exponent <= 1 has no finite tail bound"));
    double r = 2.0 * pw.onset;
    for (double x : hints.breakpoints) r = std::max(r, 2.0 * std::abs(x));
    const double beta = pw.exponent;
    if (pw.constant > 0.0) r = std::max(r, std::pow(4.0 * pw.constant / ((beta - 1.0) * tol), 1.0 / (beta - 1.0)));
    if (!std::isfinite(r) || r > 1e200)
      throw QuadratureError(unreachable(tol, "power tail bound needs an astronomically large cutoff"));
    tail = 2.0 * pw.constant * std::pow(r, 1.0 - beta) / (beta - 1.0);
    lo = -r;
    hi = r;
    inner = std::max(pw.onset, 1.0);
    for (double x : hints.breakpoints) inner = std::max(inner, std::abs(x));
  }

  std::vector<double> bps = merged_breakpoints(hints.breakpoints, lo, hi, inner);
  add_lobe_points(bps, lo, hi, hints.frequency);
  QuadratureResult r =
      integrate_finite(f, lo, hi, 0.5 * tol, bps, kDefaultSubdivisions + 4 * bps.size());
  r.abs_error_estimate += tail;
  r.converged = r.converged && r.abs_error_estimate <= tol;
  return r;
}

namespace {

// Epsilon algorithm; returns the newest even-column entry built from all terms.
double wynn_estimate(const std::vector<double>& s) {
  const std::size_t n = s.size();
  if (n < 3) return s.back();
  std::vector<double> prev(n + 1, 0.0);  // column k-1 (starts as the zero column)
  std::vector<double> cur(s.begin(), s.end());
  double best = s.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    for (std::size_t j = 0; j + k < n; ++j) {
      const double d = cur[j + 1] - cur[j];
      if (d == 0.0 || !std::isfinite(d)) return best;
      next[j] = prev[j + 1] + 1.0 / d;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0 && !cur.empty() && std::isfinite(cur.back())) best = cur.back();
  }
  return best;
}

}  // namespace

QuadratureResult integrate_oscillatory(const RealFn& amplitude, double frequency, double from,
                                       double tol, Oscillator kind) {
  if (frequency == 0.0 || !std::isfinite(frequency))
    throw std::invalid_argument("integrate_oscillatory: frequency must be finite and nonzero");
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_oscillatory: need tol > 0");
  const double w = std::abs(frequency);
  const double sign = (kind == Oscillator::Sine && frequency < 0.0) ? -1.0 : 1.0;
  const double offset = kind == Oscillator::Sine ? 0.0 : 0.5;
  const double step = kPi / w;

  ComplexFn integrand = [&](double t) -> Complex {
    const double osc = kind == Oscillator::Sine ? std::sin(w * t) : std::cos(w * t);
    return amplitude(t) * osc;
  };

  // first oscillator zero beyond `from`
  double k = std::floor(from / step - offset) + 1.0;
  double z = (k + offset) * step;
  if (z - from < 1e-9 * step) {
    k += 1.0;
    z = (k + offset) * step;
  }

  // per-lobe target, floored near the roundoff level of the lobe itself
  auto lobe_tol = [&](double a, double len) {
    const double amp = std::abs(amplitude(a));
    return std::isfinite(amp) ? std::max(tol / 128.0, 100.0 * kEps * amp * len) : tol / 128.0;
  };
  QuadratureResult head = integrate_finite(integrand, from, z, lobe_tol(from, z - from));
  double lobe_error = head.abs_error_estimate;
  std::size_t evals = head.evaluations;
  bool lobes_ok = head.converged;

  std::vector<double> partial{head.value.real()};
  std::vector<double> lobe_sizes;
  std::vector<double> estimates;
  constexpr std::size_t kMaxLobes = 600;
  bool decaying = true;
  double value = partial.back(), extrap_error = kInf;

  for (std::size_t n = 0; n < kMaxLobes; ++n) {
    const double a = (k + offset + static_cast<double>(n)) * step;
    const double b = a + step;
    QuadratureResult lobe = integrate_finite(integrand, a, b, lobe_tol(a, step));
    evals += lobe.evaluations;
    lobe_error += lobe.abs_error_estimate;
    lobes_ok = lobes_ok && lobe.converged;
    partial.push_back(partial.back() + lobe.value.real());
    lobe_sizes.push_back(std::abs(lobe.value.real()));

    // the epsilon table over the last terms only keeps the work bounded
    const std::size_t window = std::min<std::size_t>(partial.size(), 40);
    std::vector<double> tailseq(partial.end() - static_cast<std::ptrdiff_t>(window), partial.end());
    estimates.push_back(wynn_estimate(tailseq));
    const std::size_t m = estimates.size();
    if (m >= 3) {
      const double e0 = estimates[m - 1];
      extrap_error = std::abs(e0 - estimates[m - 2]) + std::abs(e0 - estimates[m - 3]);
      // never claim better than the first neglected lobe allows without acceleration
      value = e0;
      if (lobe_sizes.back() < extrap_error) {
        value = partial.back();
        extrap_error = lobe_sizes.back();
      }
    }
    if (n >= 24) {
      const double early = *std::max_element(lobe_sizes.begin(), lobe_sizes.begin() + 4);
      const double late = *std::max_element(lobe_sizes.end() - 4, lobe_sizes.end());
      if (late >= early && early > 0.0) {
        decaying = false;
        break;
      }
    }
    const std::size_t nl = lobe_sizes.size();
    const bool shrinking = nl >= 3 && lobe_sizes[nl - 1] <= lobe_sizes[nl - 2] &&
                           lobe_sizes[nl - 2] <= lobe_sizes[nl - 3];
    if (m >= 4 && shrinking && extrap_error + lobe_error <= 0.5 * tol) break;
  }

  QuadratureResult r;
  r.value = sign * value;
  r.abs_error_estimate = extrap_error + lobe_error;
  r.evaluations = evals;
  r.converged = decaying && lobes_ok && std::isfinite(value) && r.abs_error_estimate <= tol;
  return r;
}

QuadratureResult integrate_fourier_tail(const RealFn& amplitude, double nu, double from,
                                        double tol) {
  if (nu == 0.0) throw std::invalid_argument("integrate_fourier_tail: nu must be nonzero");
  QuadratureResult c = integrate_oscillatory(amplitude, nu, from, 0.5 * tol, Oscillator::Cosine);
  QuadratureResult s = integrate_oscillatory(amplitude, nu, from, 0.5 * tol, Oscillator::Sine);
  QuadratureResult r = c;
  r.value = c.value + Complex(0.0, 1.0) * s.value;
  r.abs_error_estimate += s.abs_error_estimate;
  r.evaluations += s.evaluations;
  r.converged = c.converged && s.converged;
  return r;
}

QuadratureResult integrate_power_tail(const ComplexFn& f, double from, double constant,
                                      double exponent, double tol) {
  if (!(from > 0.0)) throw std::invalid_argument("integrate_power_tail: need from > 0");
  if (!(exponent > 1.0))
    throw QuadratureError(unreachable(tol, "power tail with exponent <= 1 has no finite tail bound"));
  double r = 2.0 * from;
  if (constant > 0.0)
    r = std::max(r, std::pow(2.0 * constant / ((exponent - 1.0) * tol), 1.0 / (exponent - 1.0)));
  if (!std::isfinite(r) || r > 1e250)
    throw QuadratureError(unreachable(tol, "power tail bound needs an astronomically large cutoff"));
  const double tail = constant * std::pow(r, 1.0 - exponent) / (exponent - 1.0);
  const std::vector<double> bps = geometric_points(from, r);
  QuadratureResult q =
      integrate_finite(f, from, r, 0.5 * tol, bps, kDefaultSubdivisions + 4 * bps.size());
  q.abs_error_estimate += tail;
  q.converged = q.converged && q.abs_error_estimate <= tol;
  return q;
}

namespace {

// quintic smoothstep: flattens kinks of the integrand at whole periods
double smooth_map(double v) { return v * v * v * (10.0 - 15.0 * v + 6.0 * v * v); }
double smooth_jac(double v) { return 30.0 * v * v * (1.0 - v) * (1.0 - v); }

}  // namespace

QuadratureResult integrate_periodic_power(const ComplexFn& periodic, double period,
                                          double exponent, double from, double tol) {
  if (!(period > 0.0) || !(from > 0.0))
    throw std::invalid_argument("integrate_periodic_power: need period > 0 and from > 0");
  if (!(exponent > 1.0))
    throw QuadratureError(unreachable(tol, "periodic tail with exponent <= 1 diverges"));
  if (!(tol > 0.0)) throw std::invalid_argument("integrate_periodic_power: need tol > 0");
  const double L = period, g = exponent, x0 = from;

  // u in [0, n) covers n periods; integer u are period starts
  auto over_periods = [&](const std::function<Complex(double, double)>& h) {
    return [&, h](double u) {
      const double k = std::floor(u);
      const double v = u - k;
      const double t = x0 + L * (k + smooth_map(v));
      return h(t, v) * (L * smooth_jac(v));
    };
  };

  // one-period statistics
  QuadratureResult abs_int = integrate_finite(
      over_periods([&](double t, double) { return Complex(std::abs(periodic(t))); }), 0.0, 1.0, 1e-10 * L);
  const double scale = std::max(abs_int.value.real(), 1e-300);
  const double stat_tol = std::max(1e-14 * scale, 1e-300);
  QuadratureResult total =
      integrate_finite(over_periods([&](double t, double) { return periodic(t); }), 0.0, 1.0, stat_tol);
  const Complex mean = total.value / L;
  QuadratureResult rbar_int = integrate_finite(
      over_periods([&](double t, double) { return (x0 + L - t) * (periodic(t) - mean); }), 0.0, 1.0,
      stat_tol * L);
  const Complex rbar = rbar_int.value / L;
  QuadratureResult dev_int = integrate_finite(
      over_periods([&](double t, double) { return Complex(std::abs(periodic(t) - mean)); }), 0.0, 1.0,
      1e-6 * scale);
  const double b2 = 2.0 * (dev_int.value.real() + dev_int.abs_error_estimate) * L;

  // cutoff so the explicit remainder stays below tol/4
  double x = std::max(x0 + 4.0 * L, std::pow(4.0 * g * b2 / tol, 1.0 / (g + 1.0)));
  const double n_periods = std::ceil((x - x0) / L);
  if (!std::isfinite(n_periods) || n_periods > 4e6)
    throw QuadratureError(unreachable(tol, "periodic tail needs too many periods"));
  const auto n = static_cast<std::size_t>(n_periods);
  x = x0 + static_cast<double>(n) * L;

  std::vector<double> bps;
  bps.reserve(n);
  for (std::size_t k = 1; k < n; ++k) bps.push_back(static_cast<double>(k));
  QuadratureResult core =
      integrate_finite(over_periods([&](double t, double) { return periodic(t) * std::pow(t, -g); }), 0.0,
                       static_cast<double>(n), 0.5 * tol, bps, kDefaultSubdivisions + 8 * n);

  const double xg = std::pow(x, -g);
  const Complex far = mean * x * xg / (g - 1.0) + rbar * xg;
  QuadratureResult r;
  r.value = core.value + far;
  r.abs_error_estimate = core.abs_error_estimate + g * b2 * xg / x +
                         total.abs_error_estimate / L * x * xg / (g - 1.0) +
                         rbar_int.abs_error_estimate / L * xg;
  r.evaluations = core.evaluations + abs_int.evaluations + total.evaluations +
                  rbar_int.evaluations + dev_int.evaluations;
  r.converged = core.converged && r.abs_error_estimate <= tol;
  return r;
}

}  // namespace lpf

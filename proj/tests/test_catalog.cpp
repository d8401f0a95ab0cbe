#include <gtest/gtest.h>

#include <cmath>
#include <variant>

#include "lpfourier/catalog.hpp"
#include "lpfourier/lp_norm.hpp"

using namespace lpf;

namespace {

const Complex kI(0.0, 1.0);

Complex from_model(const std::vector<TailComponent>& side, double t) {
  Complex v = 0.0;
  for (const auto& c : side)
    for (const auto& m : c.modes) v += m.coefficient * std::exp(kI * m.frequency * t) * c.amplitude(t);
  return v;
}

double decay_bound(const DecayInfo& d, double t) {
  if (auto* c = std::get_if<CompactSupport>(&d)) return (t < c->lo || t > c->hi) ? 0.0 : kInf;
  if (auto* p = std::get_if<PowerTail>(&d))
    return std::abs(t) >= p->onset ? p->constant * std::pow(std::abs(t), -p->exponent) : kInf;
  const auto& e = std::get<ExponentialTail>(d);
  return std::abs(t) >= e.onset ? e.constant * std::exp(-e.rate * std::abs(t)) : kInf;
}

// Every metadata claim checked pointwise on a grid.
void expect_metadata_honest(const TestFunction& f) {
  SCOPED_TRACE(f.id);
  for (double t = -60.0; t <= 60.0; t += 0.0731) {
    const Complex v = f(t);
    if (!is_finite(v)) continue;
    EXPECT_LE(std::abs(v), decay_bound(f.decay, t) * (1 + 1e-12) + 1e-300) << "decay at t=" << t;
    EXPECT_LE(std::abs(v), f.sup_bound * (1 + 1e-12)) << "sup at t=" << t;
    if (f.tail && std::abs(t) > f.tail->onset) {
      const Complex m = t > 0 ? from_model(f.tail->positive, t) : from_model(f.tail->negative, -t);
      EXPECT_LT(std::abs(m - v), 1e-12 * (1 + std::abs(v))) << "tail model at t=" << t;
      for (const auto& c : t > 0 ? f.tail->positive : f.tail->negative) {
        const double a = c.amplitude(std::abs(t));
        EXPECT_LE(a, c.bound_constant * std::pow(std::abs(t), -c.bound_exponent) * (1 + 1e-12));
      }
    }
    if (f.periodic && std::abs(t) > f.periodic->onset) {
      const auto& pt = *f.periodic;
      const double x = std::abs(t);
      const Complex m = (t > 0 ? pt.positive(x) : pt.negative(x)) * std::pow(x, -pt.exponent);
      EXPECT_LT(std::abs(m - v), 1e-12 * (1 + std::abs(v))) << "periodic tail at t=" << t;
      const Complex shifted = t > 0 ? pt.positive(x + pt.period) : pt.negative(x + pt.period);
      EXPECT_LT(std::abs(shifted - (t > 0 ? pt.positive(x) : pt.negative(x))), 1e-9);
    }
  }
}

}  // namespace

TEST(Catalog, EveryEntryBuildsAndListsOnce) {
  const auto lines = catalog_listing();
  EXPECT_EQ(lines.size(), catalog_entries().size());
  for (const auto& e : catalog_entries()) {
    const TestFunction f = builtin(e.name);
    EXPECT_EQ(f.id, e.name);
  }
}

TEST(Catalog, UnknownNameListsAlternatives) {
  try {
    builtin("nope");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("gaussian"), std::string::npos);
  }
}

TEST(Catalog, SpecParsing) {
  EXPECT_EQ(builtin_spec("heat:0.25").id, "heat:0.25");
  EXPECT_EQ(builtin_spec("sinc").id, "sinc");
  EXPECT_THROW(builtin_spec("heat:abc"), std::invalid_argument);
  EXPECT_THROW(builtin_spec("heat:-1"), std::invalid_argument);
  EXPECT_THROW(builtin_spec("abs_pow:1"), std::invalid_argument);
  EXPECT_NO_THROW(builtin_spec("abs_pow_odd:1"));
}

TEST(Catalog, MetadataHonestForEveryEntry) {
  for (const auto& e : catalog_entries()) expect_metadata_honest(builtin(e.name));
  expect_metadata_honest(builtin("fejer_psi", 0.5));
  expect_metadata_honest(builtin("dirichlet_psi", 2.0));
  expect_metadata_honest(builtin("heat", 0.3));
}

TEST(Catalog, PsifVanishesAtZero) {
  for (const auto& e : catalog_entries()) {
    const TestFunction f = builtin(e.name);
    if (f.closed_form_psif) EXPECT_EQ(std::abs((*f.closed_form_psif)(0.0)), 0.0) << f.id;
  }
}

TEST(Catalog, PsifIsPrimitiveOfTransform) {
  // Psi_f(s) = int_0^s fhat: compare slopes of the closed forms by central differences.
  for (const auto& e : catalog_entries()) {
    const TestFunction f = builtin(e.name);
    if (!f.closed_form_psif || !f.closed_form_fhat) continue;
    for (double s : {-2.3, -0.4, 0.3, 0.7, 1.9}) {
      const double h = 1e-5;
      const Complex slope = ((*f.closed_form_psif)(s + h) - (*f.closed_form_psif)(s - h)) / (2 * h);
      EXPECT_LT(std::abs(slope - (*f.closed_form_fhat)(s)), 1e-6) << f.id << " s=" << s;
    }
  }
}

TEST(Catalog, DerivativeMatchesFiniteDifferences) {
  for (const char* name : {"gaussian", "heat"}) {
    const TestFunction f = builtin(name);
    ASSERT_TRUE(f.derivative);
    for (double t : {-2.1, -0.5, 0.0, 0.3, 1.7}) {
      const double h = 1e-5;
      const Complex fd = (f(t + h) - f(t - h)) / (2 * h);
      EXPECT_NEAR(std::abs(fd - (*f.derivative)(t)), 0.0, 1e-8) << name << " t=" << t;
    }
    expect_metadata_honest(*f.derivative);
  }
}

TEST(AbsPowConstants, MatchGammaFormulas) {
  // int_0^inf x^{mu-1} sin x = Gamma(mu) sin(pi mu/2) with mu = -1/p, and
  // int_0^inf (1 - cos x) x^{-1-a} = Gamma(1-a) cos(pi a/2)/a.
  for (double p : {1.25, 2.0, 4.0}) {
    const double mu = -1.0 / p;
    EXPECT_NEAR(abs_pow_sine_constant(p), std::tgamma(mu) * std::sin(kPi * mu / 2), 1e-9) << p;
  }
  for (double p : {1.5, 2.0, 4.0}) {
    const double a = 1.0 / p;
    EXPECT_NEAR(abs_pow_cosine_constant(p), std::tgamma(1 - a) * std::cos(kPi * a / 2) / a, 1e-9) << p;
  }
  EXPECT_NEAR(abs_pow_cosine_constant(1.0), kPi / 2, 1e-9);
}

TEST(LpNorm, MatchesClosedForms) {
  for (const auto& e : catalog_entries()) {
    const TestFunction f = builtin(e.name);
    if (!f.known_lp_norm) continue;
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      if (!f.in_lp(p)) continue;
      const double want = f.known_lp_norm(p);
      if (std::isnan(want)) continue;
      const NormResult r = lp_norm_checked(f, p, 1e-9);
      EXPECT_TRUE(r.converged) << f.id << " p=" << p;
      EXPECT_NEAR(r.value, want, 1e-8 * want) << f.id << " p=" << p;
    }
  }
}

TEST(LpNorm, OscillatoryTailsViaPeriodicMean) {
  // ||sinc||_2 = sqrt(pi); ||fejer_psi(a)||_2 = 1/sqrt(3 pi a); ||dirichlet_psi(a)||_2 = 1/sqrt(pi a).
  EXPECT_NEAR(lp_norm(builtin("sinc"), 2.0, 1e-9), std::sqrt(kPi), 1e-8);
  EXPECT_NEAR(lp_norm(builtin("fejer_psi", 0.5), 2.0, 1e-9), 1.0 / std::sqrt(1.5 * kPi), 1e-8);
  EXPECT_NEAR(lp_norm(builtin("dirichlet_psi", 2.0), 2.0, 1e-9), 1.0 / std::sqrt(2 * kPi), 1e-8);
}

TEST(LpNorm, RejectsOutsideMembership) {
  EXPECT_THROW(lp_norm(builtin("abs_pow"), 2.0, 1e-6), HypothesisError);
  EXPECT_THROW(lp_norm(builtin("sinc"), 1.0, 1e-6), HypothesisError);
  EXPECT_THROW(lp_norm(builtin("pow_tail"), 1.25, 1e-6), HypothesisError);
  EXPECT_THROW(lp_norm(builtin("remark_piecewise"), 2.0, 1e-6), HypothesisError);
  try {
    lp_norm(builtin("abs_pow"), 2.0, 1e-6);
  } catch (const HypothesisError& e) {
    EXPECT_EQ(e.hypothesis(), "f in L^p");
  }
}

TEST(LpNorm, ScalesUnderDilation) {
  // ||f(a.)||_p = |a|^{-1/p} ||f||_p
  const TestFunction g = builtin("gaussian");
  for (double a : {0.5, -2.0}) {
    const TestFunction d = dilate(g, a, 0.0);
    for (double p : {1.0, 2.5})
      EXPECT_NEAR(lp_norm(d, p, 1e-9), std::pow(std::abs(a), -1.0 / p) * lp_norm(g, p, 1e-9), 1e-8);
  }
}

TEST(TransformMetadata, StaysHonest) {
  for (const char* name : {"gaussian", "sinc", "fejer_psi", "poisson_psi", "pow_tail", "indicator", "dirichlet_psi"}) {
    const TestFunction f = builtin(name);
    expect_metadata_honest(translate(f, 1.7));
    expect_metadata_honest(translate(f, -0.6));
    expect_metadata_honest(modulate(f, 0.8));
    expect_metadata_honest(reflect(f));
    expect_metadata_honest(dilate(f, -1.3, 0.4));
    expect_metadata_honest(dilate(f, 2.0, 0.0));
    expect_metadata_honest(combine(2.0, f, Complex(0, -1), builtin("gaussian")));
  }
  expect_metadata_honest(combine(1.0, builtin("sinc"), 0.5, builtin("dirichlet_psi")));
}

TEST(TransformMetadata, ClosedFormsFollowTheAlgebra) {
  const TestFunction g = builtin("gaussian");
  const TestFunction r = reflect(modulate(g, 0.5));
  for (double t : {-1.0, 0.2, 2.0}) EXPECT_LT(std::abs(r(t) - std::exp(-kI * 0.5 * t) * g(-t)), 1e-15);
  const TestFunction c = combine(2.0, g, 3.0, builtin("indicator"));
  ASSERT_TRUE(c.closed_form_psif);
  // Si(0.9) by its Maclaurin series
  double si = 0.0, term = 0.9;
  for (int k = 0; k < 12; ++k) {
    si += term / (2 * k + 1);
    term *= -0.81 / ((2 * k + 2) * (2 * k + 3));
  }
  EXPECT_LT(std::abs((*c.closed_form_psif)(0.9) - (2.0 * kPi * std::erf(0.45) + 6.0 * si)), 1e-13);
}

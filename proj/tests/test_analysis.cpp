#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lpfourier/analysis.hpp"
#include "lpfourier/catalog.hpp"
#include "lpfourier/constants.hpp"
#include "lpfourier/lp_norm.hpp"

using namespace lpf;

namespace {

const std::vector<KernelVariant> kAdmissible = {KernelVariant::CesaroFejer, KernelVariant::AbelPoisson,
                                                KernelVariant::GaussWeierstrass};

template <class Fn>
std::string rejection(Fn&& fn) {
  try {
    fn();
  } catch (const HypothesisError& e) {
    return e.hypothesis();
  }
  return "";
}

// composite Simpson on [a, b]
template <class Fn>
double simpson(Fn&& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace

TEST(FhatDirect, ElementaryTransforms) {
  for (double s : {0.3, 1.0, 2.0, 7.5}) {
    EXPECT_NEAR(fhat_direct(builtin("indicator"), s).value.real(), 2.0 * std::sin(s) / s, 1e-10);
    EXPECT_NEAR(fhat_direct(builtin("gaussian"), s).value.real(), std::sqrt(kPi) * std::exp(-0.25 * s * s), 1e-10);
    // the kernel pair: psi_a has transform K_a
    EXPECT_NEAR(fhat_direct(builtin("poisson_psi", 0.5), s).value.real(), std::exp(-0.5 * s), 1e-9);
    EXPECT_NEAR(fhat_direct(builtin("fejer_psi"), s).value.real(), std::max(0.0, 1.0 - s), 1e-9);
    EXPECT_NEAR(fhat_direct(builtin("gauss_weierstrass_psi", 2.0), s).value.real(), std::exp(-4.0 * s * s), 1e-10);
  }
}

TEST(FhatDirect, ImproperIntegralForPowerTail) {
  // frozen from 30-digit oscillatory quadrature of int_1^inf e^{-it} t^-0.8 dt
  const QuadratureResult r = fhat_direct(builtin("pow_tail"), 1.0);
  EXPECT_NEAR(r.value.real(), -0.416275063459050854910630748131, 1e-9);
  EXPECT_NEAR(r.value.imag(), -0.635823421432257832136590091628, 1e-9);
}

TEST(FhatDirect, RejectsSinc) {
  EXPECT_EQ(rejection([] { fhat_direct(builtin("sinc"), 0.5); }), "g in L^1");
  EXPECT_EQ(rejection([] { fhat_direct(builtin("pow_tail"), 0.0); }), "g in L^1");
}

TEST(Convolve, ClosedForms) {
  const TestFunction g = builtin("gaussian"), ind = builtin("indicator");
  for (double x : {0.0, 0.7, -2.0})
    EXPECT_NEAR(convolve(g, g, x).value.real(), std::sqrt(kPi / 2.0) * std::exp(-0.5 * x * x), 1e-10);
  EXPECT_NEAR(convolve(ind, ind, 0.0).value.real(), 2.0, 1e-12);
  EXPECT_NEAR(convolve(ind, ind, 1.5).value.real(), 0.5, 1e-12);
  EXPECT_NEAR(convolve(ind, ind, 2.5).value.real(), 0.0, 1e-14);
  // a narrow heat kernel, variance 2a^2
  const double a = 1e-3, v = 1.0 + 4.0 * a * a;
  const TestFunction narrow = builtin("gauss_weierstrass_psi", a);
  for (double x : {0.0, 0.8, -1.9})
    EXPECT_NEAR(convolve(g, narrow, x).value.real(), std::exp(-x * x / v) / std::sqrt(v), 1e-9);
  EXPECT_EQ(rejection([] { convolve(builtin("sinc"), builtin("sinc"), 0.0); }), "L^p * L^1");
}

TEST(Convolve, IndicatorAgainstPoissonKernel) {
  // (1/pi)(atan((x+1)/a) - atan((x-1)/a)) at a = 1/2
  const TestFunction psi = builtin("poisson_psi", 0.5);
  for (double x : {0.0, 0.5, 2.0}) {
    const double want = (std::atan((x + 1.0) / 0.5) - std::atan((x - 1.0) / 0.5)) / kPi;
    EXPECT_NEAR(convolve(builtin("indicator"), psi, x).value.real(), want, 1e-10);
  }
}

TEST(Convolve, YoungInequality) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"indicator", "gaussian"}, {"gaussian", "heat"}, {"indicator", "poisson_psi"}, {"gaussian", "fejer_psi:0.5"}};
  for (const auto& [a, b] : pairs) {
    const TestFunction f = builtin_spec(a), g = builtin_spec(b);
    const TestFunction c = convolution_function(f, g, 1e-10);
    const double g1 = lp_norm(g, 1.0, 1e-8);
    for (double p : {1.0, 2.0, 3.0}) {
      const NormResult n = lp_norm_checked(c, p, 1e-3);
      EXPECT_LE(n.value, lp_norm(f, p, 1e-8) * g1 + n.abs_error_estimate) << a << "*" << b << " p=" << p;
    }
  }
}

TEST(Exchange, GaussianAgainstGaussWeierstrass) {
  // int sqrt(pi) e^{-s^2/4} e^{-s^2} ds = 2 pi / sqrt(5)
  const EqualityReport r = exchange_check(builtin("gaussian"), gauss_weierstrass_kernel(1.0), 2.0, 1e-6);
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.lhs.real(), 2.0 * kPi / std::sqrt(5.0), 1e-6);
  EXPECT_NEAR(r.rhs.real(), 2.0 * kPi / std::sqrt(5.0), 1e-6);
}

TEST(Exchange, PowerTailExample) {
  const EqualityReport r = exchange_check(builtin("indicator"), bv_builtin("power_tail"), 2.0, 1e-5);
  EXPECT_TRUE(r.pass) << r.abs_diff;
  EXPECT_NEAR(r.rhs.real(), 1.0629898033721140703, 1e-5);
}

TEST(Exchange, BoundHoldsOnPassingPairs) {
  const std::vector<std::tuple<std::string, std::string, double>> cases = {
      {"indicator", "gauss_weierstrass", 1.0}, {"gaussian", "poisson:0.5", 2.0}, {"heat", "fejer", 3.0},
      {"indicator", "indicator_01", 1.5},      {"gaussian", "power_tail", 2.0}};
  for (const auto& [f, g, p] : cases) {
    const EqualityReport r = exchange_check(builtin_spec(f), bv_builtin_spec(g), p, 1e-5);
    EXPECT_TRUE(r.pass) << f << " " << g << " diff " << r.abs_diff;
    EXPECT_LE(std::abs(r.lhs), r.bound + r.budget) << f << " " << g;
  }
}

TEST(Exchange, RejectsNamedHypotheses) {
  EXPECT_EQ(rejection([] { exchange_check(builtin("gaussian"), bv_builtin("sinc"), 2.0); }),
            "finite weighted variation");
  EXPECT_EQ(rejection([] { exchange_check(builtin("gaussian"), bv_builtin("step"), 2.0); }), "g vanishes at infinity");
  EXPECT_EQ(rejection([] { exchange_check(builtin("pow_tail"), gauss_weierstrass_kernel(1.0), 1.0); }), "f in L^p");
}

TEST(Kernels, UnitMassAndPairConsistency) {
  for (KernelVariant v : kAdmissible) {
    for (double a : {1.0, 0.25}) {
      const KernelFamily k = make_kernel(v, a);
      EXPECT_NEAR(k.flags.mass, 1.0, 1e-10) << kernel_name(v) << " a=" << a;
      EXPECT_TRUE(k.flags.all()) << k.flags.failures();
      for (double s : {0.0, 0.5, 1.7, -3.0})
        EXPECT_NEAR(fhat_direct(k.psi, s, 1e-11).value.real(), k.K(s).real(), 1e-9) << kernel_name(v) << " s=" << s;
    }
  }
  const KernelFamily fej = make_kernel(KernelVariant::CesaroFejer, 1.0);
  EXPECT_EQ(fej.K(1.0), Complex(0.0));
  EXPECT_EQ(fej.K(-1.0), Complex(0.0));
  EXPECT_EQ(fej.K.breakpoints, (std::vector<double>{-1.0, 0.0, 1.0}));
}

TEST(Kernels, HypothesesAcrossExponents) {
  for (KernelVariant v : kAdmissible)
    for (double p : {1.0, 2.0, 3.0}) EXPECT_TRUE(inversion_hypotheses(make_kernel(v, 0.5), p).all());
  // moments of the triangle: int |s|^{1/p} (1 - |s|) and int |s|^{1/p}
  const InversionHypotheses h = inversion_hypotheses(make_kernel(KernelVariant::CesaroFejer, 1.0), 2.0);
  EXPECT_NEAR(h.moment, 2.0 * (1.0 / 1.5 - 1.0 / 2.5), 1e-9);
  EXPECT_NEAR(h.derivative_moment, 2.0 / 1.5, 1e-9);
}

TEST(Kernels, DirichletNegativeControl) {
  for (double p : {1.0, 2.0, 3.0}) {
    const InversionHypotheses h = inversion_hypotheses(make_kernel(KernelVariant::Dirichlet, 1.0), p);
    EXPECT_FALSE(h.all());
    EXPECT_FALSE(h.absolutely_continuous);
    EXPECT_FALSE(h.derivative_moment_finite);
    EXPECT_FALSE(h.psi_integrable);
    EXPECT_TRUE(h.moment_finite);
  }
  const KernelFamily d = make_kernel(KernelVariant::Dirichlet, 1.0);
  EXPECT_EQ(rejection([&] { inversion_apply(builtin("indicator"), d, 0.0, InversionRoute::Convolution, 2.0); }),
            "summability kernel hypotheses");
  EXPECT_EQ(parse_kernel("cesaro_fejer"), KernelVariant::CesaroFejer);
  EXPECT_THROW(parse_kernel("bogus"), std::invalid_argument);
}

TEST(Inversion, RoutesAgree) {
  const TestFunction ind = builtin("indicator");
  for (KernelVariant v : kAdmissible) {
    const KernelFamily k = make_kernel(v, 0.5);
    for (double x : {0.0, 0.5, 2.0}) {
      const QuadratureResult c = inversion_apply(ind, k, x, InversionRoute::Convolution, 2.0);
      const QuadratureResult s = inversion_apply(ind, k, x, InversionRoute::Stieltjes, 2.0);
      EXPECT_LT(std::abs(c.value - s.value), 1e-6) << kernel_name(v) << " x=" << x;
    }
  }
  // Gauss-Weierstrass on the indicator: erf((1 - x)/(2a)) + erf((1 + x)/(2a)) over 2
  const KernelFamily gw = make_kernel(KernelVariant::GaussWeierstrass, 0.5);
  for (double x : {0.0, 1.3}) {
    const double want = 0.5 * (std::erf((1.0 - x)) + std::erf((1.0 + x)));
    EXPECT_NEAR(inversion_apply(ind, gw, x, InversionRoute::Stieltjes, 1.0).value.real(), want, 1e-7);
  }
  // heavy smoothing of the Gaussian: e^{-x^2/(1+4a^2)} / sqrt(1+4a^2)
  const KernelFamily wide = make_kernel(KernelVariant::GaussWeierstrass, 3.0);
  const double x = 1.2, c = 1.0 + 36.0;
  EXPECT_NEAR(inversion_apply(builtin("gaussian"), wide, x, InversionRoute::Stieltjes, 2.0).value.real(),
              std::exp(-x * x / c) / std::sqrt(c), 1e-8);
}

TEST(Inversion, SweepDecreases) {
  const std::vector<double> as = {1.0, 0.5, 0.25, 0.125};
  const auto rows = inversion_sweep(builtin("indicator"), KernelVariant::GaussWeierstrass, 2.0, as);
  ASSERT_EQ(rows.size(), as.size());
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].distance, rows[i - 1].distance);
  // ||chi - chi * psi_a||_2^2 = 4 sigma int_0^inf Q(u)^2 du with sigma = sqrt(2) a and
  // int_0^inf Q^2 = (2 - sqrt 2) / (2 sqrt(2 pi)) (erfc squared integral)
  const double q2 = (2.0 - std::sqrt(2.0)) / (2.0 * std::sqrt(2.0 * kPi));
  for (const auto& r : rows) {
    const double want = std::sqrt(4.0 * std::sqrt(2.0) * r.a * q2);
    // the two jump layers overlap at a = 1, so only the small-a rows are compared
    if (r.a <= 0.25) EXPECT_NEAR(r.distance, want, 2e-2 * want + 1e-3) << r.a;
  }
  const auto g = inversion_sweep(builtin("gaussian"), KernelVariant::AbelPoisson, 1.0, {0.5, 0.25});
  EXPECT_LT(g[1].distance, g[0].distance);
}

TEST(Proposition, CatalogCases) {
  const PropositionReport g = proposition_checker(builtin("gaussian"));
  EXPECT_TRUE(g.derivative_lp && g.moment_derivative_lp && g.derivative_bv && g.moment_derivative_bv);
  EXPECT_EQ(g.triggered.size(), 4u);
  const PropositionReport r = proposition_checker(builtin("remark_piecewise"));
  EXPECT_TRUE(r.moment_derivative_lp);
  EXPECT_FALSE(r.moment_derivative_bv);
  EXPECT_TRUE(r.fhat_in_bv);
  const PropositionReport s = proposition_checker(builtin("sinc"));
  EXPECT_TRUE(s.triggered.empty());
  EXPECT_TRUE(s.closed_form_bv);
  EXPECT_TRUE(s.sufficient_only);
}

TEST(ConvolutionExchange, ExampleConfigurations) {
  // frozen from 30-digit quadrature of int fhat g1hat g2
  const EqualityReport a =
      convolution_exchange_check(builtin("indicator"), builtin("gaussian"), gauss_weierstrass_kernel(1.0), 2.0);
  EXPECT_TRUE(a.pass) << a.abs_diff;
  EXPECT_NEAR(a.rhs.real(), 5.26664426199622529627, 1e-6);
  const EqualityReport b = convolution_exchange_check(builtin("gaussian"), builtin("heat"), poisson_kernel(1.0), 2.0);
  EXPECT_TRUE(b.pass) << b.abs_diff;
  EXPECT_NEAR(b.lhs.real(), 1.80899733509810829577, 1e-6);
  EXPECT_EQ(rejection([] {
              convolution_exchange_check(builtin("gaussian"), builtin("indicator"), poisson_kernel(1.0), 2.0);
            }),
            "g1 hat of bounded variation");
  EXPECT_EQ(rejection([] {
              convolution_exchange_check(builtin("gaussian"), builtin("gaussian"), bv_builtin("sinc"), 2.0);
            }),
            "finite weighted variation");
}

TEST(DoubleKernel, FejerWithGaussian) {
  // frozen from 30-digit quadrature of int f (4 sin^2(s/2)/s^2) sqrt(pi) e^{-s^2/4}
  const DoubleKernelReport a = double_kernel_check(builtin("indicator"), fejer_kernel(1.0), builtin("gaussian"), 2.0);
  EXPECT_TRUE(a.equality.pass);
  EXPECT_NEAR(a.equality.lhs.real(), 3.18708963759926830949, 1e-6);
  const DoubleKernelReport b = double_kernel_check(builtin("gaussian"), fejer_kernel(1.0), builtin("gaussian"), 2.0);
  EXPECT_TRUE(b.equality.pass);
  EXPECT_NEAR(b.equality.lhs.real(), 2.71987850987132151611, 1e-6);
  EXPECT_TRUE(b.variation_bound_holds);
  EXPECT_NEAR(b.variation_bound, 2.0 * std::sqrt(kPi), 1e-7);
  EXPECT_TRUE(std::isfinite(b.weighted_variation));
}

TEST(DoubleKernel, ConvolutionPointValues) {
  // triangle * Gaussian against a Simpson oracle
  const BVFunction c = convolution_bv(fejer_kernel(1.0), builtin("gaussian"));
  for (double x : {0.0, 0.6, 2.5}) {
    const double want =
        simpson([x](double t) { return std::max(0.0, 1.0 - std::abs(t)) * std::exp(-(x - t) * (x - t)); }, -1.0, 1.0,
                20000);
    EXPECT_NEAR(c(x).real(), want, 1e-10);
    const double h = 1e-5;
    EXPECT_NEAR(c.derivative(x).real(), (c(x + h) - c(x - h)).real() / (2 * h), 1e-7);
  }
}

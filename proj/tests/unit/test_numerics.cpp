// test_numerics.cpp — Quadrature rules and special functions.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "qdsps/quadrature.hpp"
#include "qdsps/special_functions.hpp"

using namespace qdsps;
using complex = std::complex<double>;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    for (int order : {10, 15, 20, 25, 30}) {
        const auto& gl = quad::gauss_legendre(order);
        double s = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * std::pow(gl.nodes[i], 2 * order - 2);
        EXPECT_NEAR(s, 2.0 / double(2 * order - 1), 1e-13) << order;
    }
    EXPECT_THROW(quad::gauss_legendre(7), std::invalid_argument);
}

TEST(AdaptiveGaussKronrod, OscillatoryIntegral) {
    quad::AdaptiveOptions o;
    o.abs_tol = 1e-13;
    const auto r = quad::adaptive_gauss_kronrod([](double x) { return std::exp(complex(0.0, 7.0 * x)); }, 0.0, 3.0, o);
    const complex ref = (std::exp(complex(0.0, 21.0)) - 1.0) / complex(0.0, 7.0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(std::abs(r.value - ref), 0.0, 1e-12);
}

TEST(GradedRule, LorentzianAndTails) {
    const double w = 1e-3;
    const std::vector<quad::Feature> f = {{0.0, w}, {0.5, 0.1}};
    quad::RuleOptions o;
    o.order = 20;
    const auto rule = quad::graded_rule(f, o);
    const double lor = rule.integrate([&](double x) { return w / (x * x + w * w); });
    EXPECT_NEAR(lor, M_PI, 1e-9);
    const double two = rule.integrate([&](double x) { return 0.1 / ((x - 0.5) * (x - 0.5) + 0.01); });
    EXPECT_NEAR(two, M_PI, 1e-9);
}

TEST(GradedRule, HalfLine) {
    const std::vector<quad::Feature> f = {{0.0, 0.01}};
    quad::RuleOptions o;
    o.order = 20;
    const auto rule = quad::graded_half_line_rule(0.0, f, o);
    EXPECT_NEAR(rule.integrate([](double x) { return 0.01 / (x * x + 1e-4); }), 0.5 * M_PI, 1e-9);
    for (double x : rule.nodes) EXPECT_GE(x, 0.0);
}

TEST(GradedRule, BroadbandWindow) {
    quad::RuleOptions o;
    o.order = 15;
    o.window_lo = -10.0;
    o.window_hi = 10.0;
    o.max_panel = 0.25;
    const std::vector<quad::Feature> f = {{0.0, 1e-4}};
    const auto rule = quad::graded_rule(f, o);
    EXPECT_NEAR(rule.integrate([](double x) { return std::exp(-x * x) * std::cos(3.0 * x); }),
                std::sqrt(M_PI) * std::exp(-2.25), 1e-12);
}

TEST(Gregory, ExactForCubics) {
    const std::size_t n = 41;
    const double h = 0.05;
    const auto w = quad::gregory_weights(n, h);
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += w[k] * std::pow(double(k) * h, 3);
    EXPECT_NEAR(s, std::pow(2.0, 4) / 4.0, 1e-12);
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 2.0, 1e-13);
    EXPECT_THROW(quad::gregory_weights(5, h), std::invalid_argument);
}

TEST(ExpintE1, AgainstNumericIntegration) {
    // E1(z) = \int_1^inf e^{-z t}/t dt, real and imaginary parts separately.
    for (const complex z : {complex(0.3, 0.0), complex(1.5, 2.0), complex(4.0, -7.0), complex(0.05, 0.4)}) {
        const double re = oracle::integrate_to_infinity(
            [&](double t) { return std::exp(-z.real() * t) * std::cos(z.imag() * t) / t; }, 1.0, 1e-14);
        const double im = oracle::integrate_to_infinity(
            [&](double t) { return -std::exp(-z.real() * t) * std::sin(z.imag() * t) / t; }, 1.0, 1e-14);
        const complex got = special::expint_e1(z);
        EXPECT_NEAR(got.real(), re, 1e-10) << z;
        EXPECT_NEAR(got.imag(), im, 1e-10) << z;
    }
    EXPECT_THROW(special::expint_e1(complex{}), std::domain_error);
}

TEST(ExpintE1, PurelyImaginaryArgument) {
    // E1(i x) = -Ci(x) + i (Si(x) - pi/2); Ci, Si from finite-range quadrature.
    const double x = 3.0;
    const double si = oracle::integrate([](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, 0.0, x);
    const double cin = oracle::integrate([](double t) { return t == 0.0 ? 0.0 : (1.0 - std::cos(t)) / t; }, 0.0, x);
    const double ci = 0.57721566490153286061 + std::log(x) - cin;
    const complex got = special::expint_e1(complex(0.0, x));
    EXPECT_NEAR(got.real(), -ci, 1e-12);
    EXPECT_NEAR(got.imag(), si - M_PI / 2.0, 1e-12);
}

TEST(InverseSquareTail, AgainstNumericIntegration) {
    const double a = 2.0;
    for (const complex s : {complex(0.0, 0.0), complex(0.2, 0.0), complex(0.1, -1.3)}) {
        const double re = oracle::integrate_to_infinity(
            [&](double t) { return std::exp(-s.real() * t) * std::cos(s.imag() * t) / (t * t); }, a, 1e-14);
        const double im = oracle::integrate_to_infinity(
            [&](double t) { return -std::exp(-s.real() * t) * std::sin(s.imag() * t) / (t * t); }, a, 1e-14);
        const complex got = special::inverse_square_laplace_tail(s, a);
        EXPECT_NEAR(got.real(), re, 1e-11) << s;
        EXPECT_NEAR(got.imag(), im, 1e-11) << s;
    }
}

TEST(CubicFourier, UniformInFrequency) {
    // g(t) = e^{-(1+2i) t} on [0, 3]: the transform is (1 - e^{-pL}) / p.
    const double L = 3.0;
    for (double h : {0.02, 0.01}) {
        const auto M = static_cast<std::size_t>(std::lround(L / h));
        std::vector<complex> g(M + 1);
        for (std::size_t k = 0; k <= M; ++k) g[k] = std::exp(-complex(1.0, 2.0) * (h * double(k)));
        double worst = 0.0;
        for (double w : {0.0, 0.3, 5.0, 7.4, 7.6, 15.1, 26.0, 40.0}) {
            const auto wt = quad::cubic_fourier_weights(-w * h);
            complex sum{};
            for (std::size_t k = 0; k <= M; ++k) sum += g[k] * std::polar(1.0, -w * h * double(k));
            complex v = wt.W * sum;
            for (std::size_t j = 0; j < 4; ++j) v += wt.a[j] * g[j] + std::polar(1.0, -w * L) * std::conj(wt.a[j]) * g[M - j];
            v *= h;
            const complex p(1.0, 2.0 + w);
            const complex ref = (1.0 - std::exp(-p * L)) / p;
            worst = std::max(worst, std::abs(v - ref) / std::abs(ref));
        }
        // Fourth order regardless of w h, which reaches 0.8 here.
        EXPECT_LT(worst, 2.0 * std::pow(h, 4)) << h;
    }
}

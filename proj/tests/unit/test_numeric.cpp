#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tbw/numeric/quadrature.hpp"
#include "tbw/numeric/sdof.hpp"
#include "tbw/numeric/special.hpp"

using namespace tbw::numeric;

TEST(Simpson, ExactForCubics) {
    const int n = 10;
    const double h = 0.3;
    std::vector<double> f(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double x = h * i;
        f[i] = 2.0 * x * x * x - x + 4.0;
    }
    const double b = h * n;
    EXPECT_NEAR(simpson(f, h), 0.5 * std::pow(b, 4) - 0.5 * b * b + 4.0 * b, 1e-12);
    EXPECT_NEAR(simpson([](double x) { return std::sin(x); }, 0.0, M_PI, 200), 2.0, 1e-8);
}

TEST(CumulativeIntegral, QuadraticDataIsExactEverywhere) {
    for (int n : {7, 8}) {
        const double x0 = -1.0, h = 0.25;
        std::vector<double> f(n);
        auto g = [](double x) { return 3.0 * x * x - 2.0 * x + 1.0; };
        auto G = [](double x) { return x * x * x - x * x + x; };
        for (int i = 0; i < n; ++i) f[i] = g(x0 + h * i);
        const CumulativeIntegral ci(f, x0, h);
        for (double x = x0; x <= x0 + h * (n - 1); x += 0.037) EXPECT_NEAR(ci(x), G(x) - G(x0), 1e-12) << x;
        EXPECT_NEAR(ci.total(), G(x0 + h * (n - 1)) - G(x0), 1e-12);
        EXPECT_EQ(ci(x0 - 1.0), 0.0);
    }
}

TEST(CumulativeIntegral, RejectsShortInput) {
    std::vector<double> f{1.0, 2.0};
    EXPECT_THROW(CumulativeIntegral(f, 0.0, 1.0), tbw::InvalidInput);
}

TEST(Sdof, ConstantForceMatchesClosedForm) {
    // q'' + w^2 q = f0 from rest: q = f0 / w^2 (1 - cos w t)
    const double w = 7.3, f0 = 2.5, dt = 0.013;
    const SdofPropagator p(w, dt);
    double q = 0.0, v = 0.0;
    for (int k = 1; k <= 5000; ++k) {
        p.step(q, v, f0, f0);
        const double t = k * dt;
        ASSERT_NEAR(q, f0 / (w * w) * (1.0 - std::cos(w * t)), 1e-9 * f0 / (w * w)) << t;
        ASSERT_NEAR(v, f0 / w * std::sin(w * t), 1e-9 * f0 / w) << t;
    }
}

TEST(Sdof, LinearForceIsExact) {
    // f = a t: q = a / w^2 (t - sin(w t) / w)
    const double w = 3.1, a = 0.7, dt = 0.05;
    const SdofPropagator p(w, dt);
    double q = 0.0, v = 0.0;
    for (int k = 0; k < 2000; ++k) p.step(q, v, a * k * dt, a * (k + 1) * dt);
    const double t = 2000 * dt;
    EXPECT_NEAR(q, a / (w * w) * (t - std::sin(w * t) / w), 1e-10 * a * t / (w * w));
}

TEST(Sdof, ResonantEnvelopeGrowsLinearly) {
    // q'' + w^2 q = sin(w t): q = (sin(w t) - w t cos(w t)) / (2 w^2), so q(nT) = -nT / (2 w)
    const double w = 2.0 * M_PI * 1.3, T = 2.0 * M_PI / w;
    const int per = 100, cycles = 15;
    const double dt = T / per;
    const SdofPropagator p(w, dt);
    double q = 0.0, v = 0.0;
    for (int k = 0; k < cycles * per; ++k) p.step(q, v, std::sin(w * k * dt), std::sin(w * (k + 1) * dt));
    const double slope = -q / (cycles * T);
    EXPECT_NEAR(slope, 1.0 / (2.0 * w), 1e-3 / (2.0 * w));
}

TEST(Sdof, ZeroFrequencyIsDoubleIntegration) {
    const SdofPropagator p(0.0, 0.1);
    double q = 1.0, v = 2.0;
    p.step(q, v, 3.0, 3.0);
    EXPECT_NEAR(q, 1.0 + 0.2 + 1.5 * 0.01, 1e-15);
    EXPECT_NEAR(v, 2.0 + 0.3, 1e-15);
}

TEST(Sdof, SmallPhaseSeriesContinuous) {
    const double dt = 1.0;
    for (double w : {0.999e-2, 1.001e-2}) {
        const SdofPropagator p(w, dt);
        double q = 0.0, v = 0.0;
        p.step(q, v, 1.0, 1.0);
        EXPECT_NEAR(q, (1.0 - std::cos(w * dt)) / (w * w), 1e-12);
    }
}

TEST(ScaledChSh, MatchesHyperbolicAndTrig) {
    const double h = 2.0;
    const ScaledChSh a(0.49, h);
    const double c = std::cosh(0.7 * h);
    for (double z : {-2.0, -0.3, 0.0, 1.1, 2.0}) {
        const auto v = a(z);
        EXPECT_NEAR(v[0], std::cosh(0.7 * z) / c, 1e-15);
        EXPECT_NEAR(v[1], std::sinh(0.7 * z) / 0.7 / c, 1e-15);
    }
    const ScaledChSh b(-0.49, h);
    EXPECT_NEAR(b(1.1)[0], std::cos(0.77), 1e-15);
    EXPECT_NEAR(b(1.1)[1], std::sin(0.77) / 0.7, 1e-15);
    EXPECT_DOUBLE_EQ(ScaledChSh(0.0, h)(0.4)[1], 0.4);
}

TEST(ScaledChSh, BoundedForHugeArguments) {
    const ScaledChSh a(1.0, 5000.0);
    EXPECT_NEAR(a.log_scale(), 5000.0 - std::log(2.0), 1e-9);
    for (double z : {-5000.0, -4999.0, 0.0, 100.0, 5000.0}) {
        const auto v = a(z);
        EXPECT_TRUE(std::isfinite(v[0]) && std::isfinite(v[1]));
        EXPECT_LE(std::abs(v[0]), 1.0 + 1e-15);
    }
    EXPECT_NEAR(a(5000.0)[0], 1.0, 1e-15);
    EXPECT_NEAR(a(4999.0)[0], std::exp(-1.0), 1e-15);
}

TEST(Leibniz, ProductRule) {
    std::array<double, 4> sn, cs;
    trig_derivatives(1.3, 0.4, sn, cs);
    const auto p = leibniz(sn, cs);  // sin cos = sin(2 b z) / 2
    const double b = 1.3, z = 0.4;
    EXPECT_NEAR(p[0], 0.5 * std::sin(2 * b * z), 1e-15);
    EXPECT_NEAR(p[1], b * std::cos(2 * b * z), 1e-14);
    EXPECT_NEAR(p[2], -2 * b * b * std::sin(2 * b * z), 1e-14);
    EXPECT_NEAR(p[3], -4 * b * b * b * std::cos(2 * b * z), 1e-13);
}

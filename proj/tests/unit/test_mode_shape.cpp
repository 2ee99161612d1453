#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "tbw/numeric/quadrature.hpp"
#include "tbw/spectrum/mode_shape.hpp"

using namespace tbw;

namespace {

struct Case {
    const char* name;
    SystemConfig cfg;
    int n_modes;
};

std::vector<Case> cases() {
    return {{"unfilled_L100", presets::water_main(100.0), 22},
            {"filled_L100", presets::water_main(100.0, presets::kFilledMass), 25},
            {"unfilled_L1000", presets::water_main(1000.0), 60}};
}

std::vector<ModeShape> modes_of(const Case& c) {
    return mode_shapes(c.cfg, find_natural_frequencies(c.cfg, 0.0, c.n_modes));
}

}  // namespace

TEST(ModeShape, UnitPeakAndSignConvention) {
    for (const auto& c : cases())
        for (const auto& m : modes_of(c)) {
            double peak = 0.0;
            for (int i = 0; i <= 20000; ++i) peak = std::max(peak, std::abs(evaluate_mode(m, c.cfg.L * i / 20000).phi));
            EXPECT_LE(peak, 1.0 + 1e-9) << c.name << " " << m.omega;
            EXPECT_GT(peak, 1.0 - 1e-6) << c.name << " " << m.omega;
            const ModeSample s0 = evaluate_mode_full(m, 0.0);
            if (std::abs(s0.phi) >= 1e-9) EXPECT_GT(s0.phi, 0.0);
            else EXPECT_GT(s0.dphi, 0.0);
        }
}

TEST(ModeShape, FreeEndResiduals) {
    for (const auto& c : cases())
        for (const auto& m : modes_of(c)) {
            const double KM = coefficient_KM(c.cfg, m.omega), KT = coefficient_KT(c.cfg, m.omega);
            double mmax = 0.0, tmax = 0.0;
            for (int i = 0; i <= 4000; ++i) {
                const ModeSample s = evaluate_mode_full(m, c.cfg.L * i / 4000);
                mmax = std::max({mmax, std::abs(s.d2phi), std::abs(KM * s.phi)});
                tmax = std::max({tmax, std::abs(s.d3phi), std::abs(KT * s.dphi)});
            }
            for (double x : {0.0, c.cfg.L}) {
                const ModeSample s = evaluate_mode_full(m, x);
                EXPECT_LE(std::abs(s.d2phi + KM * s.phi), 1e-6 * mmax) << c.name << " " << m.omega << " x=" << x;
                EXPECT_LE(std::abs(s.d3phi + KT * s.dphi), 1e-6 * tmax) << c.name << " " << m.omega << " x=" << x;
            }
        }
}

TEST(ModeShape, RotationSatisfiesBothFieldEquations) {
    for (const auto& c : cases()) {
        const double EJ = c.cfg.flexural_rigidity(), GA = c.cfg.shear_rigidity();
        const double mr2 = c.cfg.rotary_inertia();
        for (const auto& m : modes_of(c)) {
            const double KM = coefficient_KM(c.cfg, m.omega);
            for (int i = 0; i <= 400; ++i) {
                const ModeSample s = evaluate_mode_full(m, c.cfg.L * i / 400);
                const double first = s.d2phi + KM * s.phi;
                EXPECT_LE(std::abs(s.dpsi - first), 1e-6 * (std::abs(s.d2phi) + std::abs(KM * s.phi) + 1e-12));
                // EJ psi'' + GA (phi' - psi) + m r^2 w^2 psi = 0 with psi'' = phi''' + K_M phi'
                const double t1 = EJ * (s.d3phi + KM * s.dphi), t2 = GA * (s.dphi - s.psi),
                             t3 = mr2 * m.omega * m.omega * s.psi;
                const double scale = std::abs(EJ * s.d3phi) + std::abs(EJ * KM * s.dphi) + std::abs(GA * s.dphi) +
                                     std::abs(GA * s.psi) + std::abs(t3);
                EXPECT_LE(std::abs(t1 + t2 + t3), 1e-6 * scale) << c.name << " " << m.omega;
            }
        }
    }
}

TEST(ModeShape, GeneralizedOrthogonality) {
    for (const auto& c : cases()) {
        const auto modes = modes_of(c);
        const int n = 40000;
        const double h = c.cfg.L / n;
        std::vector<std::vector<double>> phi(modes.size()), psi(modes.size());
        for (std::size_t k = 0; k < modes.size(); ++k)
            for (int i = 0; i <= n; ++i) {
                const auto v = evaluate_mode(modes[k], h * i);
                phi[k].push_back(v.phi);
                psi[k].push_back(v.psi);
            }
        auto inner = [&](std::size_t a, std::size_t b) {
            std::vector<double> f(n + 1);
            for (int i = 0; i <= n; ++i)
                f[i] = c.cfg.m_l * phi[a][i] * phi[b][i] + c.cfg.rotary_inertia() * psi[a][i] * psi[b][i];
            return numeric::simpson(f, h);
        };
        std::vector<double> M(modes.size());
        for (std::size_t k = 0; k < modes.size(); ++k) M[k] = inner(k, k);
        double worst = 0.0;
        for (std::size_t a = 0; a < modes.size(); ++a)
            for (std::size_t b = a + 1; b < modes.size(); ++b) {
                if (modes[a].omega == modes[b].omega) continue;
                worst = std::max(worst, std::abs(inner(a, b)) / std::sqrt(M[a] * M[b]));
            }
        EXPECT_LE(worst, 1e-6) << c.name;
    }
}

TEST(ModeShape, SymmetryAboutMidspan) {
    for (const auto& c : cases())
        for (const auto& m : modes_of(c)) {
            const double sign = m.parity == Parity::Even ? 1.0 : -1.0;
            for (int i = 0; i <= 200; ++i) {
                const double x = c.cfg.L * i / 200;
                EXPECT_NEAR(evaluate_mode(m, c.cfg.L - x).phi, sign * evaluate_mode(m, x).phi, 1e-6)
                    << c.name << " " << m.omega;
            }
        }
}

TEST(ModeShape, RigidTranslation) {
    const SystemConfig cfg = presets::water_main(100.0);
    const ModeShape m = mode_shape(cfg, cutoff_frequencies(cfg).w2);
    EXPECT_EQ(m.spectrum_case, SpectrumCase::At2);
    for (int i = 0; i <= 100; ++i) {
        const auto v = evaluate_mode(m, i * 1.0);
        EXPECT_NEAR(v.phi, 1.0, 1e-12);
        EXPECT_NEAR(v.psi, 0.0, 1e-12);
    }
}

TEST(ModeShape, ShortBeamFirstModeIsNearlyRigidRotation) {
    const SystemConfig cfg = presets::water_main(100.0);
    const ModeShape m = mode_shape(cfg, find_natural_frequencies(cfg, 0.0, 1)[0]);
    EXPECT_EQ(m.parity, Parity::Odd);
    double dev = 0.0;
    for (int i = 0; i <= 100; ++i) dev = std::max(dev, std::abs(evaluate_mode(m, i * 1.0).phi - (1.0 - i / 50.0)));
    EXPECT_LT(dev, 0.05);
}

TEST(ModeShape, RejectsNonEigenfrequency) {
    const SystemConfig cfg = presets::water_main(100.0);
    EXPECT_THROW(mode_shape(cfg, 150.0), NotAnEigenfrequency);
    EXPECT_THROW(mode_shape(cfg, -1.0), InvalidInput);
}

TEST(ModeShape, RejectsAbscissaOutsideSpan) {
    const SystemConfig cfg = presets::water_main(100.0);
    const ModeShape m = mode_shape(cfg, cutoff_frequencies(cfg).w2);
    EXPECT_THROW(evaluate_mode(m, -1.0), InvalidInput);
    EXPECT_THROW(evaluate_mode(m, 100.5), InvalidInput);
}

TEST(ModeShape, DegeneratePairOnLongBeam) {
    const SystemConfig cfg = presets::water_main(10000.0);
    const auto roots = find_natural_frequencies(cfg, 0.0, 2);
    ASSERT_EQ(roots[0].omega, roots[1].omega);
    const auto pair = mode_shapes(cfg, roots[0].omega);
    ASSERT_EQ(pair.size(), 2u);
    EXPECT_TRUE(pair[0].degenerate);
    EXPECT_NE(pair[0].parity, pair[1].parity);
    // Even and odd shapes are orthogonal by symmetry; check a discrete sum.
    double dot = 0.0, n0 = 0.0, n1 = 0.0;
    for (int i = 0; i <= 100000; ++i) {
        const double x = cfg.L * i / 100000;
        const double a = evaluate_mode(pair[0], x).phi, b = evaluate_mode(pair[1], x).phi;
        dot += a * b;
        n0 += a * a;
        n1 += b * b;
    }
    EXPECT_LT(std::abs(dot) / std::sqrt(n0 * n1), 1e-9);
    EXPECT_GT(n0, 0.0);
}

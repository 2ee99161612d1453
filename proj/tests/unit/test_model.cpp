#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "tbw/model.hpp"

using namespace tbw;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

DerivedSection water_main_section(double rho_contents) {
    return derive_section(1.067, 0.0079, 210e9, 0.3, 0.53, 7860.35, rho_contents);
}

}  // namespace

TEST(DeriveSection, UnfilledWaterMainAreaMatchesTabulatedValue) {
    // Exact annulus gives 0.02629 m^2, 1.1% above the two-digit tabulated 0.026.
    EXPECT_LT(rel(water_main_section(0.0).section.A_b, 0.026), 0.01);
}

TEST(DeriveSection, UnfilledWaterMainMatchesTabulatedValues) {
    const DerivedSection ds = water_main_section(0.0);
    EXPECT_LT(rel(ds.section.J, 0.0037), 0.01);
    EXPECT_LT(rel(ds.section.r, 0.374), 0.01);
    EXPECT_LT(rel(ds.m_l, 207.56), 0.01);
}

TEST(DeriveSection, FilledWaterMainMass) {
    EXPECT_LT(rel(water_main_section(1000.0).m_l, 1074.99), 0.01);
}

TEST(DeriveSection, AreaApproachesSolidDiscFromBelow) {
    const double D = 1.0, disc = std::numbers::pi / 4.0;
    double prev = 0.0;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-6}) {
        const double A = derive_section(D, D / 2.0 - eps, 210e9, 0.3, 0.53, 7850.0).section.A_b;
        EXPECT_LT(A, disc);
        EXPECT_GT(A, prev);
        prev = A;
    }
    EXPECT_LT(rel(prev, disc), 1e-5);
}

TEST(DeriveSection, RejectsNonPhysicalGeometry) {
    EXPECT_THROW(derive_section(1.0, 0.5, 210e9, 0.3, 0.53, 7850.0), InvalidInput);
    EXPECT_THROW(derive_section(1.0, 0.7, 210e9, 0.3, 0.53, 7850.0), InvalidInput);
    EXPECT_THROW(derive_section(1.0, 0.0, 210e9, 0.3, 0.53, 7850.0), InvalidInput);
    EXPECT_THROW(derive_section(1.0, 0.01, 210e9, 0.3, 0.53, -1.0), InvalidInput);
}

TEST(DeriveSection, ShearModulusFromPoisson) {
    const BeamSection s = water_main_section(0.0).section;
    EXPECT_LT(rel(s.G, s.E / (2.0 * (1.0 + s.nu))), 1e-12);
}

TEST(SpringFromBilinear, TabulatedSoil) {
    EXPECT_NEAR(spring_from_bilinear(123.98e3, 0.0991), 2.502e6, 1e3);
}

TEST(SpringFromBilinear, Definition) { EXPECT_DOUBLE_EQ(spring_from_bilinear(1.0, 2.0), 1.0); }

TEST(SpringFromBilinear, AxialSpringDirectEvaluation) {
    EXPECT_LT(rel(spring_from_bilinear(41.22e3, 0.0015), 5.496e7), 1e-12);
}

TEST(SpringFromBilinear, RejectsZeroDisplacement) {
    EXPECT_THROW(spring_from_bilinear(1.0, 0.0), InvalidInput);
    EXPECT_THROW(spring_from_bilinear(0.0, 1.0), InvalidInput);
}

TEST(SpringFromBilinear, Scaling) {
    const double k = spring_from_bilinear(3.7e4, 0.05);
    EXPECT_LT(rel(spring_from_bilinear(2 * 3.7e4, 2 * 0.05), k), 1e-15);
    EXPECT_LT(rel(spring_from_bilinear(2 * 3.7e4, 0.05), 2 * k), 1e-15);
}

TEST(SectionInvariants, RadiusOfGyrationRoundTrip) {
    for (double D : {0.1, 0.5, 1.067, 2.0})
        for (double f : {0.001, 0.05, 0.2, 0.45}) {
            const BeamSection s = derive_section(D, f * D, 200e9, 0.29, 0.5, 7800.0).section;
            EXPECT_LT(rel(std::sqrt(s.J / s.A_b), s.r), 1e-12);
            EXPECT_NO_THROW(validate(s));
        }
}

TEST(SectionInvariants, OverridesKeepRadiusConsistent) {
    SectionOverrides o;
    o.A_b = 0.026;
    o.J = 0.0037;
    const DerivedSection ds = apply_overrides(water_main_section(0.0), o);
    EXPECT_LT(rel(ds.section.r, std::sqrt(0.0037 / 0.026)), 1e-15);
    EXPECT_NO_THROW(validate(ds.section));
}

TEST(SectionInvariants, ValidateRejectsInconsistentRadius) {
    BeamSection s = water_main_section(0.0).section;
    s.r *= 1.001;
    EXPECT_THROW(validate(s), InvalidInput);
}

TEST(SectionInvariants, FilledHeavierThanUnfilled) {
    for (double rho : {1.0, 500.0, 1000.0})
        EXPECT_GT(water_main_section(rho).m_l, water_main_section(0.0).m_l);
}

TEST(SystemConfig, RigiditiesPositive) {
    const SystemConfig cfg = presets::water_main(100.0);
    EXPECT_GT(cfg.flexural_rigidity(), 0.0);
    EXPECT_GT(cfg.shear_rigidity(), 0.0);
    EXPECT_DOUBLE_EQ(cfg.k_l(), 2.503e6);
}

TEST(SystemConfig, RejectsBadValues) {
    const DerivedSection ds = water_main_section(0.0);
    FoundationParams f;
    f.k_l = 1e6;
    EXPECT_THROW(make_system(ds, f, 0.0), InvalidInput);
    f.k_l = 0.0;
    EXPECT_THROW(make_system(ds, f, 100.0), InvalidInput);
    f = foundation_from_bilinear(1e5, 0.1);
    f.k_l *= 1.01;
    EXPECT_THROW(make_system(ds, f, 100.0), InvalidInput);
}

TEST(SystemConfig, BilinearFoundationConsistent) {
    const FoundationParams f = foundation_from_bilinear(123.98e3, 0.0991);
    EXPECT_NO_THROW(make_system(water_main_section(0.0), f, 100.0));
    EXPECT_LT(rel(f.k_l, 2.0 * 123.98e3 / 0.0991), 1e-12);
}

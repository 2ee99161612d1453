#include <array>
#include <cmath>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include "tbw/spectrum/mode_shape.hpp"
#include "tbw/spectrum/roots.hpp"
#include "../support/raw_determinant.hpp"

using namespace tbw;
using mp = boost::multiprecision::cpp_bin_float_50;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Roots of the unfilled water main, L = 100, from a 50-digit fundamental-matrix determinant.
constexpr std::array<double, 22> kRootsL100{
    109.804610825754, 109.814223192355, 109.860393511379, 110.373235944521, 112.114088540737,
    116.117482446563, 123.495349809295, 135.159557229757, 151.61830954793,  172.957416706816,
    198.970277503404, 229.314056585109, 263.61626316323,  301.525564590489, 342.727861504114,
    386.94653267376,  433.937375017911, 483.482799256558, 535.386836700561, 589.471262307723,
    645.572707634552, 703.540537008316};

constexpr std::array<double, 24> kRootsL1000{
    109.81064034558,  109.810640570838, 109.813442569713, 109.813532820199, 109.813713956946,
    109.813936192353, 109.814147842382, 109.814223192354, 109.81444056517964, 109.816309144913, 109.819537059289,
    109.824449256948, 109.831424098389, 109.840888099972, 109.853311280588, 109.869204561201,
    109.889118353358, 109.913641673874, 109.943401466452, 109.979061983775, 110.021324159524,
    110.070924933185, 110.128636505611, 110.195265510597};

constexpr std::array<double, 25> kRootsFilledL100{
    48.2492087793756, 48.2534325462971, 48.273720231352,  48.4990681602002, 49.2640156404323,
    51.023145670908,  54.2650519993757, 59.3904176360597, 66.622552706488,  75.9991629301551,
    87.4294657387973, 100.762815960234, 115.83553753663,  132.493251502273, 150.59793955704,
    170.028051654941, 190.676282598354, 212.447021551625, 235.254157976001, 259.019378062921,
    283.670896137095, 309.142521425948, 335.372967330061, 362.305330263713, 389.88668497048};

int sgn(double v) { return (v > 0) - (v < 0); }
int sgn(const mp& v) { return (v > 0) - (v < 0); }

const SystemConfig kUnfilled100 = presets::water_main(100.0);

}  // namespace

TEST(Roots, UnfilledL100MatchesHighPrecisionReference) {
    const auto roots = find_natural_frequencies(kUnfilled100, 0.0, 22);
    ASSERT_EQ(roots.size(), 22u);
    for (std::size_t i = 0; i < roots.size(); ++i) EXPECT_LT(rel(roots[i].omega, kRootsL100[i]), 1e-10) << "mode " << i + 1;
}

TEST(Roots, UnfilledL1000MatchesHighPrecisionReference) {
    const auto roots = find_natural_frequencies(presets::water_main(1000.0), 0.0, 24);
    ASSERT_EQ(roots.size(), 24u);
    for (std::size_t i = 0; i < roots.size(); ++i)
        EXPECT_LT(rel(roots[i].omega, kRootsL1000[i]), 1e-10) << "mode " << i + 1;
}

TEST(Roots, FilledL100MatchesHighPrecisionReference) {
    const auto roots = find_natural_frequencies(presets::water_main(100.0, presets::kFilledMass), 0.0, 25);
    ASSERT_EQ(roots.size(), 25u);
    for (std::size_t i = 0; i < roots.size(); ++i)
        EXPECT_LT(rel(roots[i].omega, kRootsFilledL100[i]), 1e-10) << "mode " << i + 1;
}

TEST(Roots, TabulatedLeadingModes) {
    const auto roots = find_natural_frequencies(kUnfilled100, 0.0, 5);
    const std::array<double, 5> table{109.804, 109.813, 109.865, 110.385, 112.134};
    for (int i = 0; i < 5; ++i) EXPECT_LT(rel(roots[i].omega, table[i]), 1e-3) << "mode " << i + 1;
    const auto r1000 = find_natural_frequencies(presets::water_main(1000.0), 0.0, 12);
    EXPECT_LT(rel(r1000[11].omega, 109.824), 1e-3);
}

TEST(Roots, RigidTranslationAtSecondCutoff) {
    for (double L : {100.0, 1000.0}) {
        const SystemConfig cfg = presets::water_main(L);
        const auto cut = cutoff_frequencies(cfg);
        const auto roots = find_natural_frequencies(cfg, 1.01 * cut.w2, 0);
        bool found = false;
        for (const auto& r : roots)
            if (r.omega == cut.w2 && r.spectrum_case == SpectrumCase::At2 && r.parity == Parity::Even) found = true;
        EXPECT_TRUE(found) << "L = " << L;
        EXPECT_TRUE(transition_is_eigenfrequency(cfg, cut, SpectrumCase::At2, Parity::Even));
    }
}

TEST(Roots, StrictlyIncreasingAndSingular) {
    const auto roots = find_natural_frequencies(kUnfilled100, 3000.0, 0);
    ASSERT_GT(roots.size(), 30u);
    const auto cut = cutoff_frequencies(kUnfilled100);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (i) EXPECT_GT(roots[i].omega, roots[i - 1].omega);
        EXPECT_TRUE(is_parity_eigenfrequency(kUnfilled100, cut, roots[i].omega, roots[i].parity)) << i;
        EXPECT_EQ(roots[i].band, band_of(roots[i].omega, cut));
    }
}

TEST(Roots, ParityAlternatesAboveSecondCutoff) {
    const auto roots = find_natural_frequencies(kUnfilled100, 0.0, 22);
    for (std::size_t i = 3; i < roots.size(); ++i) EXPECT_NE(roots[i].parity, roots[i - 1].parity) << i;
}

TEST(Roots, RejectsEmptyRequest) { EXPECT_THROW(find_natural_frequencies(kUnfilled100, 0.0, 0), InvalidInput); }

TEST(Census, UnfilledL100) {
    const auto c = count_per_band(find_natural_frequencies(kUnfilled100, 0.0, 100));
    EXPECT_EQ(c.N1, 1);
    EXPECT_EQ(c.N2, 1);
    EXPECT_EQ(c.N1 + c.N2 + c.N3 + c.N4, 100);
}

TEST(Census, UnfilledL1000) {
    const auto c = count_per_band(find_natural_frequencies(presets::water_main(1000.0), 0.0, 100));
    EXPECT_EQ(c.N1, 2);
    EXPECT_EQ(c.N2, 6);
}

TEST(Census, UnfilledL10000FirstBands) {
    const SystemConfig cfg = presets::water_main(10000.0);
    const auto c = mode_count_per_band(cfg, cutoff_frequencies(cfg).w2 * (1.0 + 1e-7));
    EXPECT_EQ(c.N1, 2);
    EXPECT_TRUE(c.N2 == 66 || c.N2 == 67) << "N2 = " << c.N2;
}

TEST(Census, LowestModeL10000) {
    const auto r = find_natural_frequencies(presets::water_main(10000.0), 0.0, 1);
    EXPECT_LT(rel(r[0].omega, 109.810), 1e-3);
}

TEST(Determinant, ConsistentSignFarBelowFirstCutoff) {
    const int s = sgn(frequency_determinant(kUnfilled100, 1.0));
    EXPECT_NE(s, 0);
    for (double w : {0.5, 2.0, 5.0, 10.0, 50.0, 100.0}) EXPECT_EQ(sgn(frequency_determinant(kUnfilled100, w)), s) << w;
}

TEST(Determinant, ChangesSignAcrossEachRoot) {
    const auto roots = find_natural_frequencies(kUnfilled100, 0.0, 22);
    for (const auto& r : roots) {
        if (r.spectrum_case == SpectrumCase::At2) continue;
        const double lo = frequency_determinant(kUnfilled100, r.omega * (1.0 - 1e-8));
        const double hi = frequency_determinant(kUnfilled100, r.omega * (1.0 + 1e-8));
        EXPECT_LT(sgn(lo) * sgn(hi), 0) << r.omega;
    }
}

TEST(Determinant, RigidColumnVanishesAtSecondCutoff) {
    const auto cut = cutoff_frequencies(kUnfilled100);
    EXPECT_EQ(coefficient_KM(kUnfilled100, cut.w2), 0.0);
    const BoundaryMatrix bm = boundary_matrix(kUnfilled100, cut.w2);
    EXPECT_EQ(bm.spectrum_case, SpectrumCase::At2);
    EXPECT_EQ(bm.K_M, 0.0);
    EXPECT_LT(std::abs(bm.A.determinant()), 1e-12);
}

TEST(Determinant, ScalingPreservesRootsAgainstUnscaledExtendedPrecision) {
    const auto roots = find_natural_frequencies(kUnfilled100, 0.0, 22);
    int checked = 0;
    for (const auto& r : roots) {
        if (r.spectrum_case != SpectrumCase::Between23) continue;
        mp lo = mp(r.omega) * (1 - mp(1e-9)), hi = mp(r.omega) * (1 + mp(1e-9));
        const int slo = sgn(test_support::raw_determinant<mp>(kUnfilled100, lo));
        ASSERT_NE(slo * sgn(test_support::raw_determinant<mp>(kUnfilled100, hi)), 1) << "no sign change around " << r.omega;
        for (int it = 0; it < 80; ++it) {
            const mp mid = (lo + hi) / 2;
            if (sgn(test_support::raw_determinant<mp>(kUnfilled100, mid)) == slo) lo = mid;
            else hi = mid;
        }
        const double exact = static_cast<double>((lo + hi) / 2);
        EXPECT_LT(rel(r.omega, exact), 1e-10) << r.omega;
        ++checked;
    }
    EXPECT_EQ(checked, 20);
}

TEST(Determinant, NoOverflowOnLongBeam) {
    const SystemConfig cfg = presets::water_main(10000.0);
    const auto cut = cutoff_frequencies(cfg);
    for (double w : {1.0, 50.0, 0.999 * cut.w1, 300.0, 1500.0, 5000.0}) {
        const BoundaryMatrix bm = boundary_matrix(cfg, w);
        EXPECT_TRUE(bm.A.allFinite()) << w;
        EXPECT_TRUE(std::isfinite(bm.A.determinant())) << w;
    }
}

TEST(Determinant, LongBeamSignAgreesWithExtendedPrecision) {
    const SystemConfig cfg = presets::water_main(10000.0);
    const auto cut = cutoff_frequencies(cfg);
    std::vector<int> ratio;
    for (double w : {300.0, 1500.0, 5000.0}) {
        ASSERT_EQ(classify(w, cut), SpectrumCase::Between23);
        const auto wn = wavenumbers(cfg, cut, w);
        EXPECT_GT(wn[0] * cfg.L, 300.0);
        const double d = frequency_determinant(cfg, w);
        const mp e = test_support::raw_determinant<mp>(cfg, mp(w));
        ASSERT_NE(sgn(d), 0);
        ASSERT_NE(sgn(e), 0);
        ratio.push_back(sgn(d) * sgn(e));
    }
    // The change of basis has a fixed sign over the band.
    const int ref = sgn(frequency_determinant(kUnfilled100, 300.0)) * sgn(test_support::raw_determinant<mp>(kUnfilled100, mp(300.0)));
    for (int s : ratio) EXPECT_EQ(s, ref);
}

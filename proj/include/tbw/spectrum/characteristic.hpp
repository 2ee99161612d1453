#pragma once

// Dispersion relation of the Timoshenko beam on a Winkler bed.
//
// A trial solution phi ~ exp(lambda x) at angular frequency w satisfies
//   A lambda^4 + B lambda^2 + C = 0,
// a quadratic in s = lambda^2 whose root structure changes at three cut-off
// frequencies w1 (double root), w2 and w3 (zero root).

#include <cmath>
#include <complex>
#include <string_view>

#include "tbw/errors.hpp"
#include "tbw/model.hpp"

namespace tbw {

struct CharacteristicCoefficients {
    double A_c = 0.0;
    double B_c = 0.0;
    double C_c = 0.0;
};

struct CutoffFrequencies {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;
};

enum class SpectrumCase { Below1, At1, Between12, At2, Between23, At3, Above3 };

inline std::string_view to_string(SpectrumCase c) {
    switch (c) {
        case SpectrumCase::Below1: return "Below1";
        case SpectrumCase::At1: return "At1";
        case SpectrumCase::Between12: return "Between12";
        case SpectrumCase::At2: return "At2";
        case SpectrumCase::Between23: return "Between23";
        case SpectrumCase::At3: return "At3";
        case SpectrumCase::Above3: return "Above3";
    }
    return "?";
}

/// Spectrum band index 1..4 for (0,w1], (w1,w2], (w2,w3], (w3,inf).
inline int band_of(double omega, const CutoffFrequencies& c) {
    if (omega <= c.w1) return 1;
    if (omega <= c.w2) return 2;
    if (omega <= c.w3) return 3;
    return 4;
}

namespace detail {

/// Frequency-independent constants of the dispersion relation.
struct Dispersion {
    double EJ, GA, m, k, r2, e; // e = E / (kappa G)
    double w2sq, w3sq;
    double w2, w3;

    explicit Dispersion(const SystemConfig& cfg)
        : EJ(cfg.flexural_rigidity()), GA(cfg.shear_rigidity()), m(cfg.m_l), k(cfg.k_l()),
          r2(cfg.section.r * cfg.section.r), e(cfg.section.E / (cfg.section.kappa * cfg.section.G)) {
        w2sq = k / m;
        w3sq = GA / (m * r2);
        w2 = std::sqrt(w2sq);
        w3 = std::sqrt(w3sq);
    }

    double A() const { return EJ / m; }
    double B(double w) const { return r2 * (w * w * (1.0 + e) - w2sq * e); }
    // Factored so that C vanishes exactly at w2 and w3.
    double C(double w) const { return m * r2 / GA * ((w - w2) * (w + w2)) * ((w - w3) * (w + w3)); }

    double K_M(double w) const { return m * (w - w2) * (w + w2) / GA; }
    double K_T(double w) const { return K_M(w) + m * r2 * w * w / EJ; }

    // Discriminant B^2 - 4AC as a quadratic a x^2 + b x + c in x = w^2.
    double a_delta() const {
        const double p = r2 * (1.0 + e);
        const double u = 4.0 * EJ * r2 / GA;
        return p * p - u;
    }
    double b_delta() const {
        const double p = r2 * (1.0 + e), q = -r2 * e * w2sq;
        const double u = 4.0 * EJ * r2 / GA;
        return 2.0 * p * q + u * (w2sq + w3sq);
    }
    double c_delta() const {
        const double q = -r2 * e * w2sq;
        const double u = 4.0 * EJ * r2 / GA;
        return q * q - u * w2sq * w3sq;
    }
};

}  // namespace detail

inline CharacteristicCoefficients characteristic_coefficients(const SystemConfig& cfg, double omega) {
    if (!(omega >= 0.0)) throw InvalidInput("characteristic_coefficients: omega must be >= 0");
    const detail::Dispersion d(cfg);
    return {d.A(), d.B(omega), d.C(omega)};
}

/// Coefficients of the free-end conditions phi'' + K_M phi = 0 and phi''' + K_T phi' = 0.
inline double coefficient_KM(const SystemConfig& cfg, double omega) { return detail::Dispersion(cfg).K_M(omega); }
inline double coefficient_KT(const SystemConfig& cfg, double omega) { return detail::Dispersion(cfg).K_T(omega); }

struct DiscriminantCoefficients {
    double a = 0.0, b = 0.0, c = 0.0;
};

inline DiscriminantCoefficients discriminant_coefficients(const SystemConfig& cfg) {
    const detail::Dispersion d(cfg);
    return {d.a_delta(), d.b_delta(), d.c_delta()};
}

/// B^2 - 4AC evaluated directly (no factoring).
inline double discriminant(const SystemConfig& cfg, double omega) {
    const auto cc = characteristic_coefficients(cfg, omega);
    return cc.B_c * cc.B_c - 4.0 * cc.A_c * cc.C_c;
}

inline CutoffFrequencies cutoff_frequencies(const SystemConfig& cfg) {
    validate(cfg);
    const detail::Dispersion d(cfg);
    const double a = d.a_delta(), b = d.b_delta(), c = d.c_delta();
    const double disc = b * b - 4.0 * a * c;
    if (!(disc >= 0.0))
        throw UnsupportedRegime("cutoff_frequencies: discriminant quadratic has no real root");
    if (!(a > 0.0) || !(c < 0.0))
        throw UnsupportedRegime("cutoff_frequencies: expected a_delta > 0 and c_delta < 0");
    // Stable root pair; with a > 0 and c < 0 exactly one root is positive.
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double x1 = q / a, x2 = c / q;
    const double xpos = x1 > 0.0 ? x1 : x2;
    CutoffFrequencies out{std::sqrt(xpos), d.w2, d.w3};
    if (!(out.w1 <= out.w2 && out.w2 < out.w3))
        throw UnsupportedRegime("cutoff_frequencies: require w1 <= w2 < w3, got w1=" + std::to_string(out.w1) +
                                " w2=" + std::to_string(out.w2) + " w3=" + std::to_string(out.w3));
    return out;
}

inline SpectrumCase classify(double omega, const CutoffFrequencies& c, double rel_tol = 1e-9) {
    if (std::abs(omega - c.w1) <= rel_tol * c.w1) return SpectrumCase::At1;
    if (std::abs(omega - c.w2) <= rel_tol * c.w2) return SpectrumCase::At2;
    if (std::abs(omega - c.w3) <= rel_tol * c.w3) return SpectrumCase::At3;
    if (omega < c.w1) return SpectrumCase::Below1;
    if (omega < c.w2) return SpectrumCase::Between12;
    if (omega < c.w3) return SpectrumCase::Between23;
    return SpectrumCase::Above3;
}

/// Roots s = lambda^2 of the dispersion quadratic at one frequency.
struct SpatialRoots {
    double delta = 0.0;             ///< discriminant B^2 - 4AC (factored evaluation)
    std::complex<double> s_complex; ///< upper root when delta < 0
    double s1 = 0.0;                ///< larger real root when delta >= 0
    double s2 = 0.0;                ///< smaller real root when delta >= 0
    bool complex_pair = false;
};

/// Roots at omega. The discriminant is evaluated in factored form around w1 so
/// that the double root is resolved without cancellation.
inline SpatialRoots spatial_roots(const SystemConfig& cfg, const CutoffFrequencies& cut, double omega) {
    const detail::Dispersion d(cfg);
    const double a = d.a_delta(), c = d.c_delta();
    const double x1 = cut.w1 * cut.w1;
    const double x0 = c / (a * x1);
    const double delta = a * ((omega - cut.w1) * (omega + cut.w1)) * (omega * omega - x0);
    const double A = d.A(), B = d.B(omega), C = d.C(omega);
    SpatialRoots out;
    out.delta = delta;
    if (delta < 0.0) {
        out.complex_pair = true;
        out.s_complex = {-B / (2.0 * A), std::sqrt(-delta) / (2.0 * A)};
        return out;
    }
    const double sq = std::sqrt(delta);
    if (B == 0.0 && sq == 0.0) return out;
    const double q = -0.5 * (B + std::copysign(sq, B));
    double ra = q / A, rb = (q != 0.0) ? C / q : 0.0;
    if (ra < rb) std::swap(ra, rb);
    out.s1 = ra;
    out.s2 = rb;
    // C is exact at w2 and w3; recover the small root from it to keep s1 = 0 there.
    if (B > 0.0) out.s1 = (q != 0.0) ? C / q : 0.0;
    return out;
}

}  // namespace tbw

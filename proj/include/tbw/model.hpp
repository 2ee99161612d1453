#pragma once

// Physical inputs of a buried beam: pipe section, Winkler foundation, span and mass.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "tbw/errors.hpp"

namespace tbw {

/// Cross-section and material of a circular hollow beam.
struct BeamSection {
    double D = 0.0;      ///< outer diameter [m]
    double t = 0.0;      ///< wall thickness [m]
    double A_b = 0.0;    ///< cross-sectional area [m^2]
    double J = 0.0;      ///< second moment of area [m^4]
    double r = 0.0;      ///< radius of gyration sqrt(J/A_b) [m]
    double kappa = 0.53; ///< shear coefficient [-]
    double E = 0.0;      ///< elastic modulus [Pa]
    double nu = 0.3;     ///< Poisson ratio [-]
    double G = 0.0;      ///< shear modulus [Pa]
};

/// Lateral Winkler spring. When the bilinear pair is present, k_l = 2 p_u / u_l.
struct FoundationParams {
    double k_l = 0.0;               ///< stiffness per unit length [N/m^2]
    std::optional<double> p_u;      ///< ultimate lateral resistance per length [N/m]
    std::optional<double> u_l;      ///< mobilization displacement [m]
};

struct SystemConfig {
    BeamSection section;
    FoundationParams foundation;
    double L = 0.0;   ///< span [m]
    double m_l = 0.0; ///< mass per unit length, structure plus contents [kg/m]

    double flexural_rigidity() const { return section.E * section.J; }
    double shear_rigidity() const { return section.kappa * section.G * section.A_b; }
    double rotary_inertia() const { return m_l * section.r * section.r; }
    double k_l() const { return foundation.k_l; }
};

/// Shear modulus of an isotropic material.
inline double shear_modulus(double E, double nu) { return E / (2.0 * (1.0 + nu)); }

/// Secant stiffness of a bilinear soil spring reaching `resistance_per_length` at
/// `mobilization_displacement`.
inline double spring_from_bilinear(double resistance_per_length, double mobilization_displacement) {
    if (!(mobilization_displacement > 0.0))
        throw InvalidInput("spring_from_bilinear: mobilization displacement must be > 0");
    if (!(resistance_per_length > 0.0))
        throw InvalidInput("spring_from_bilinear: resistance per length must be > 0");
    return 2.0 * resistance_per_length / mobilization_displacement;
}

inline FoundationParams foundation_from_bilinear(double p_u, double u_l) {
    FoundationParams f;
    f.k_l = spring_from_bilinear(p_u, u_l);
    f.p_u = p_u;
    f.u_l = u_l;
    return f;
}

struct DerivedSection {
    BeamSection section;
    double m_l = 0.0; ///< [kg/m]
};

/// Exact annulus properties of a pipe of outer diameter D and wall t, plus its linear
/// mass with optional contents filling the bore.
inline DerivedSection derive_section(double D, double t, double E, double nu, double kappa,
                                     double rho_steel, double rho_contents = 0.0) {
    if (!(D > 0.0) || !(t > 0.0) || !(2.0 * t < D))
        throw InvalidInput("derive_section: require D > 2t > 0");
    if (rho_steel < 0.0 || rho_contents < 0.0)
        throw InvalidInput("derive_section: densities must be >= 0");
    if (!(E > 0.0)) throw InvalidInput("derive_section: E must be > 0");
    if (!(kappa > 0.0 && kappa <= 1.0)) throw InvalidInput("derive_section: require 0 < kappa <= 1");
    if (!(nu > -1.0 && nu < 0.5)) throw InvalidInput("derive_section: require -1 < nu < 0.5");

    constexpr double pi = std::numbers::pi;
    const double d = D - 2.0 * t;
    const double D2 = D * D, d2 = d * d;
    DerivedSection out;
    BeamSection& s = out.section;
    s.D = D;
    s.t = t;
    // (D^2 - d^2) = 4 t (D - t) avoids cancellation for thin walls.
    const double ring = 4.0 * t * (D - t);
    s.A_b = pi / 4.0 * ring;
    s.J = pi / 64.0 * ring * (D2 + d2);
    s.r = std::sqrt(s.J / s.A_b);
    s.kappa = kappa;
    s.E = E;
    s.nu = nu;
    s.G = shear_modulus(E, nu);
    out.m_l = rho_steel * s.A_b + rho_contents * pi / 4.0 * d2;
    return out;
}

/// Values that may replace derived section quantities (tabulated, rounded data).
struct SectionOverrides {
    std::optional<double> A_b;
    std::optional<double> J;
    std::optional<double> G;
    std::optional<double> m_l;
};

/// Applies overrides and re-establishes r = sqrt(J/A_b).
inline DerivedSection apply_overrides(DerivedSection base, const SectionOverrides& o) {
    if (o.A_b) base.section.A_b = *o.A_b;
    if (o.J) base.section.J = *o.J;
    if (o.G) base.section.G = *o.G;
    if (o.m_l) base.m_l = *o.m_l;
    if (base.section.A_b > 0.0 && base.section.J > 0.0)
        base.section.r = std::sqrt(base.section.J / base.section.A_b);
    return base;
}

/// Throws InvalidInput naming the first violated invariant.
inline void validate(const BeamSection& s) {
    if (!(s.A_b > 0.0)) throw InvalidInput("section: A_b must be > 0");
    if (!(s.J > 0.0)) throw InvalidInput("section: J must be > 0");
    if (s.D > 0.0 && !(s.t > 0.0 && 2.0 * s.t < s.D))
        throw InvalidInput("section: require 0 < t < D/2");
    if (!(s.kappa > 0.0 && s.kappa <= 1.0)) throw InvalidInput("section: require 0 < kappa <= 1");
    if (!(s.E > 0.0)) throw InvalidInput("section: E must be > 0");
    if (!(s.G > 0.0)) throw InvalidInput("section: G must be > 0");
    const double r = std::sqrt(s.J / s.A_b);
    if (std::abs(s.r - r) > 1e-12 * r) throw InvalidInput("section: r must equal sqrt(J/A_b)");
}

inline void validate(const SystemConfig& cfg) {
    validate(cfg.section);
    if (!(cfg.L > 0.0)) throw InvalidInput("system: L must be > 0");
    if (!(cfg.m_l > 0.0)) throw InvalidInput("system: m_l must be > 0");
    if (!(cfg.foundation.k_l > 0.0)) throw InvalidInput("foundation: k_l must be > 0");
    if (cfg.foundation.p_u && cfg.foundation.u_l) {
        const double k = 2.0 * *cfg.foundation.p_u / *cfg.foundation.u_l;
        if (std::abs(k - cfg.foundation.k_l) > 1e-12 * k)
            throw InvalidInput("foundation: k_l inconsistent with 2 p_u / u_l");
    }
}

inline SystemConfig make_system(const DerivedSection& ds, const FoundationParams& f, double L) {
    SystemConfig cfg;
    cfg.section = ds.section;
    cfg.foundation = f;
    cfg.L = L;
    cfg.m_l = ds.m_l;
    validate(cfg);
    return cfg;
}

/// The 42-inch steel water main buried in medium dense sand used throughout the
/// verification suite. Section values use the tabulated (rounded) A_b, J, G and m_l.
namespace presets {

inline constexpr double kUnfilledMass = 207.56;  // kg/m
inline constexpr double kFilledMass = 1074.99;   // kg/m
inline constexpr double kLateralStiffness = 2.503e6; // N/m^2

inline SystemConfig water_main(double L, double m_l = kUnfilledMass,
                               double k_l = kLateralStiffness) {
    DerivedSection ds = derive_section(1.067, 0.0079, 210e9, 0.3, 0.53, 7860.35, 0.0);
    SectionOverrides o;
    o.A_b = 0.026;
    o.J = 0.0037;
    o.G = 80.77e9;
    o.m_l = m_l;
    ds = apply_overrides(ds, o);
    FoundationParams f;
    f.k_l = k_l;
    return make_system(ds, f, L);
}

}  // namespace presets

}  // namespace tbw

#pragma once

#include <cmath>
#include <limits>
#include <numbers>

#include "tbw/errors.hpp"

namespace tbw {

/// Windowed sinusoid travelling along the beam axis: at x it starts at x / C_ph and lasts t_g.
struct GroundMotion {
    double D_max = 0.0;   ///< amplitude [m]
    double omega_f = 0.0; ///< angular frequency [rad/s]
    double C_ph = std::numeric_limits<double>::infinity(); ///< apparent velocity [m/s]
    double t_g = 0.0;     ///< duration at each point [s]

    static GroundMotion from_hz(double D_max, double f_hz, double C_ph, double t_g) {
        return {D_max, 2.0 * std::numbers::pi * f_hz, C_ph, t_g};
    }
    static GroundMotion from_cycles(double D_max, double f_hz, double C_ph, double cycles) {
        return from_hz(D_max, f_hz, C_ph, cycles / f_hz);
    }

    double frequency_hz() const { return omega_f / (2.0 * std::numbers::pi); }
    double delay(double x) const { return std::isinf(C_ph) ? 0.0 : x / C_ph; }
    /// Spatial wavenumber omega_f / C_ph (0 for simultaneous excitation).
    double wavenumber() const { return std::isinf(C_ph) ? 0.0 : omega_f / C_ph; }
};

inline void validate(const GroundMotion& gm) {
    if (!(gm.D_max >= 0.0)) throw InvalidInput("motion: D_max must be >= 0");
    if (!(gm.omega_f > 0.0)) throw InvalidInput("motion: frequency must be > 0");
    if (!(gm.C_ph > 0.0)) throw InvalidInput("motion: C_ph must be > 0");
    if (!(gm.t_g > 0.0)) throw InvalidInput("motion: t_g must be > 0");
}

inline double ground_displacement(const GroundMotion& gm, double x, double t) {
    const double tau = t - gm.delay(x);
    if (tau < 0.0 || tau > gm.t_g) return 0.0;
    return gm.D_max * std::sin(gm.omega_f * tau);
}

}  // namespace tbw

#pragma once

// Solution bases for the free-free problem, written about the midspan z = x - L/2.
//
// Both ends carry the same conditions, so every mode is either even or odd in z and
// the 4x4 boundary problem splits into two 2x2 problems that only need the end z = L/2.
// Three families cover the whole frequency axis:
//
//   Merged   even {Sh(a2,z) sin bz, Ch(a2,z) cos bz}, odd {Ch(a2,z) sin bz, Sh(a2,z) cos bz}
//            a2 = alpha^2 below w1 (lambda = alpha + i b), a2 = -d^2 just above w1
//            (lambda_{1,2} = b -+ d); exactly the double-root basis at w1.
//   Split    even {Ch(s1,z), cos l2 z}, odd {Sh(s1,z), sin l2 z}, s2 = -l2^2;
//            Ch/Sh switch from trigonometric to hyperbolic as s1 crosses zero at w2 and back at w3.
//   At3State the w3 point itself, where phi alone no longer determines the rotation and
//            the odd class gains the pure-rotation solution (phi, psi) = (0, 1).
//
// Column orders were chosen so that every change of family along the frequency axis is a
// change of basis with positive determinant; determinant signs therefore only flip at roots.

#include <array>
#include <cmath>
#include <complex>

#include "tbw/model.hpp"
#include "tbw/numeric/special.hpp"
#include "tbw/spectrum/characteristic.hpp"

namespace tbw {

enum class Parity { Even, Odd };

inline std::string_view to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

enum class BasisKind { Merged, Split, At3State };

/// Value and derivatives of one basis column at a point, with the rotation it carries.
struct ColumnEval {
    std::array<double, 4> phi{}; ///< phi, phi', phi'', phi'''
    double psi = 0.0;
    double dpsi = 0.0;
};

/// Rows of the end-condition matrix for one column: bending moment and shear.
struct EndRows {
    double moment = 0.0;
    double shear = 0.0;
};

class ParityBasis {
public:
    /// Basis at omega with the family picked from the local root structure.
    /// `at_case` forces the dedicated transition basis (omega is then the cut-off itself).
    static ParityBasis at(const SystemConfig& cfg, const CutoffFrequencies& cut, double omega,
                          SpectrumCase at_case = SpectrumCase::Below1) {
        const detail::Dispersion d(cfg);
        ParityBasis b;
        b.omega_ = omega;
        b.half_ = 0.5 * cfg.L;
        b.EJ_ = d.EJ;
        b.GA_ = d.GA;
        b.KM_ = d.K_M(omega);
        b.KT_ = d.K_T(omega);
        b.den_ = (d.w3 - omega) * (d.w3 + omega) * d.m * d.r2;  // GA - m r^2 w^2
        const double A = d.A(), B = d.B(omega);

        if (at_case == SpectrumCase::At1) {
            b.kind_ = BasisKind::Merged;
            b.a2_ = 0.0;
            b.beta_ = std::sqrt(B / (2.0 * A));
            b.chsh_ = numeric::ScaledChSh(0.0, b.half_);
            return b;
        }
        if (at_case == SpectrumCase::At2 || at_case == SpectrumCase::At3) {
            b.kind_ = at_case == SpectrumCase::At2 ? BasisKind::Split : BasisKind::At3State;
            if (at_case == SpectrumCase::At2) b.KM_ = 0.0;
            b.s1_ = 0.0;
            b.s2_ = -B / A;
            b.lam2_ = std::sqrt(-b.s2_);
            b.chsh_ = numeric::ScaledChSh(0.0, b.half_);
            b.set_split_factors();
            return b;
        }

        const SpatialRoots r = spatial_roots(cfg, cut, omega);
        if (r.complex_pair) {
            const std::complex<double> lam = std::sqrt(r.s_complex);
            b.kind_ = BasisKind::Merged;
            b.a2_ = lam.real() * lam.real();
            b.beta_ = std::abs(lam.imag());
            b.chsh_ = numeric::ScaledChSh(b.a2_, b.half_);
            return b;
        }
        if (r.s1 < 0.0 && omega < cut.w2) {
            const double l1 = std::sqrt(-r.s1), l2 = std::sqrt(-r.s2);
            const double dlt = std::sqrt(r.delta) / (2.0 * A * (l1 + l2));
            if (dlt <= l1) {
                b.kind_ = BasisKind::Merged;
                b.a2_ = dlt > 0.0 ? -dlt * dlt : 0.0;
                b.beta_ = 0.5 * (l1 + l2);
                b.chsh_ = numeric::ScaledChSh(b.a2_, b.half_);
                return b;
            }
        }
        b.kind_ = BasisKind::Split;
        b.s1_ = r.s1;
        b.s2_ = r.s2;
        b.lam2_ = std::sqrt(-r.s2);
        b.chsh_ = numeric::ScaledChSh(r.s1, b.half_);
        b.set_split_factors();
        return b;
    }

    BasisKind kind() const { return kind_; }
    double omega() const { return omega_; }
    double half_length() const { return half_; }
    double K_M() const { return KM_; }
    double K_T() const { return KT_; }
    double a2() const { return a2_; }
    double beta() const { return beta_; }
    double s1() const { return s1_; }
    double s2() const { return s2_; }
    double lambda2() const { return lam2_; }

    /// log of the positive factor the hyperbolic functions were divided by.
    double log_scale() const { return chsh_.log_scale(); }

    ColumnEval column(Parity p, int j, double z) const {
        ColumnEval out;
        std::array<double, 4> ch, sh, sn, cs;
        switch (kind_) {
            case BasisKind::Merged: {
                chsh_.derivatives(z, ch, sh);
                numeric::trig_derivatives(beta_, z, sn, cs);
                if (p == Parity::Even)
                    out.phi = j == 0 ? numeric::leibniz(sh, sn) : numeric::leibniz(ch, cs);
                else
                    out.phi = j == 0 ? numeric::leibniz(ch, sn) : numeric::leibniz(sh, cs);
                out.psi = (EJ_ * out.phi[3] + (EJ_ * KM_ + GA_) * out.phi[1]) / den_;
                out.dpsi = out.phi[2] + KM_ * out.phi[0];
                return out;
            }
            case BasisKind::Split: {
                if (j == 0) {
                    chsh_.derivatives(z, ch, sh);
                    out.phi = p == Parity::Even ? ch : sh;
                    out.psi = g1_ * out.phi[1];
                } else {
                    numeric::trig_derivatives(lam2_, z, sn, cs);
                    out.phi = p == Parity::Even ? cs : sn;
                    out.psi = g2_ * out.phi[1];
                }
                out.dpsi = out.phi[2] + KM_ * out.phi[0];
                return out;
            }
            case BasisKind::At3State: {
                if (j == 0) {
                    if (p == Parity::Even) {
                        out.phi = {1.0, 0.0, 0.0, 0.0};
                        out.psi = KM_ * z;
                        out.dpsi = KM_;
                    } else {
                        out.phi = {0.0, 0.0, 0.0, 0.0};
                        out.psi = 1.0;
                        out.dpsi = 0.0;
                    }
                } else {
                    numeric::trig_derivatives(lam2_, z, sn, cs);
                    out.phi = p == Parity::Even ? cs : sn;
                    out.psi = g2_ * out.phi[1];
                    out.dpsi = out.phi[2] + KM_ * out.phi[0];
                }
                return out;
            }
        }
        return out;
    }

    /// Free-end residuals of one column at z: moment phi'' + K_M phi, shear phi''' + K_T phi'.
    /// At w3 the shear row is written as -(GA/EJ)(phi' - psi), since the phi-only form vanishes there.
    EndRows end_rows(Parity p, int j, double z) const {
        const ColumnEval c = column(p, j, z);
        if (kind_ == BasisKind::At3State) return {c.dpsi, -(GA_ / EJ_) * (c.phi[1] - c.psi)};
        return {c.phi[2] + KM_ * c.phi[0], c.phi[3] + KT_ * c.phi[1]};
    }

private:
    // Rotation per split family: psi = g(s) phi'. Two equivalent forms; use the one whose
    // denominator is further from zero.
    void set_split_factors() {
        const double smax = std::max(std::abs(s1_), std::abs(s2_));
        auto g = [&](double s) {
            const double ra = smax > 0.0 ? std::abs(s) / smax : 0.0;
            const double rb = std::abs(den_) / GA_;
            if (ra >= rb && s != 0.0) return (s + KM_) / s;
            return (EJ_ * (s + KM_) + GA_) / den_;
        };
        g1_ = kind_ == BasisKind::At3State ? 0.0 : g(s1_);
        g2_ = g(s2_);
    }

    BasisKind kind_ = BasisKind::Split;
    double omega_ = 0.0, half_ = 0.0;
    double EJ_ = 0.0, GA_ = 0.0, KM_ = 0.0, KT_ = 0.0, den_ = 0.0;
    double a2_ = 0.0, beta_ = 0.0;
    double s1_ = 0.0, s2_ = 0.0, lam2_ = 0.0;
    double g1_ = 0.0, g2_ = 0.0;
    numeric::ScaledChSh chsh_{0.0, 0.0};
};

}  // namespace tbw

#pragma once

#include <array>
#include <cmath>

namespace tbw::numeric {

/// Entire functions Ch(a2, z) = cosh(sqrt(a2) z) and Sh(a2, z) = sinh(sqrt(a2) z) / sqrt(a2),
/// continued to cos / sin for a2 < 0 and to (1, z) at a2 = 0. For a2 > 0 both are divided by
/// cosh(sqrt(a2) h) so that values on [-h, h] stay bounded for any sqrt(a2) h.
class ScaledChSh {
public:
    ScaledChSh(double a2, double h) : a2_(a2), h_(h) {
        if (a2 > 0.0) {
            a_ = std::sqrt(a2);
            const double ah = a_ * h;
            log_scale_ = ah + std::log1p(std::exp(-2.0 * ah)) - std::log(2.0);
            inv_cosh_ah_ = ah < 350.0 ? 1.0 / std::cosh(ah) : 0.0;  // 0 selects the exponential form
        } else if (a2 < 0.0) {
            a_ = std::sqrt(-a2);
        }
    }

    double a2() const { return a2_; }
    /// log of the positive divisor applied to both functions.
    double log_scale() const { return log_scale_; }

    /// {Ch(z), Sh(z)} after scaling.
    std::array<double, 2> operator()(double z) const {
        if (a2_ == 0.0) return {1.0, z};
        if (a2_ < 0.0) return {std::cos(a_ * z), std::sin(a_ * z) / a_};
        const double t = std::abs(z), at = a_ * t;
        if (at < 350.0 && inv_cosh_ah_ > 0.0)
            return {std::cosh(at) * inv_cosh_ah_, std::sinh(a_ * z) * inv_cosh_ah_ / a_};
        const double ah = a_ * h_;
        const double den = 1.0 + std::exp(-2.0 * ah);
        const double e1 = std::exp(a_ * (t - h_));
        const double e2 = std::exp(-a_ * (t + h_));
        if (at < 350.0) {
            // sinh form avoids cancellation in e1 - e2 near the centre
            const double sh = 2.0 * std::sinh(at) * std::exp(-ah) / den / a_;
            return {(e1 + e2) / den, std::copysign(sh, z)};
        }
        return {(e1 + e2) / den, std::copysign((e1 - e2) / den / a_, z)};
    }

    /// Derivatives 0..3 of Ch and of Sh at z.
    void derivatives(double z, std::array<double, 4>& ch, std::array<double, 4>& sh) const {
        const auto [c, s] = (*this)(z);
        ch = {c, a2_ * s, a2_ * c, a2_ * a2_ * s};
        sh = {s, c, a2_ * s, a2_ * c};
    }

private:
    double a2_ = 0.0, h_ = 0.0, a_ = 0.0;
    double log_scale_ = 0.0;
    double inv_cosh_ah_ = 1.0;
};

/// Derivatives 0..3 of sin(b z) and cos(b z).
inline void trig_derivatives(double b, double z, std::array<double, 4>& sn, std::array<double, 4>& cs) {
    const double s = std::sin(b * z), c = std::cos(b * z);
    const double b2 = b * b, b3 = b2 * b;
    sn = {s, b * c, -b2 * s, -b3 * c};
    cs = {c, -b * s, -b2 * c, b3 * s};
}

/// Derivatives 0..3 of the product f g from those of the factors.
inline std::array<double, 4> leibniz(const std::array<double, 4>& f, const std::array<double, 4>& g) {
    return {f[0] * g[0],
            f[1] * g[0] + f[0] * g[1],
            f[2] * g[0] + 2.0 * f[1] * g[1] + f[0] * g[2],
            f[3] * g[0] + 3.0 * f[2] * g[1] + 3.0 * f[1] * g[2] + f[0] * g[3]};
}

}  // namespace tbw::numeric

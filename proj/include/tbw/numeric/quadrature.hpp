#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "tbw/errors.hpp"

namespace tbw::numeric {

/// Smallest even number of intervals n with (b - a) / n <= h_max.
inline std::size_t simpson_intervals(double a, double b, double h_max, std::size_t min_intervals = 2) {
    std::size_t n = static_cast<std::size_t>(std::ceil((b - a) / h_max - 1e-12));
    n = std::max(n, min_intervals);
    if (n % 2) ++n;
    return n;
}

/// Composite Simpson rule over uniformly spaced samples (odd count, spacing h).
inline double simpson(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    if (n < 3 || n % 2 == 0) throw InvalidInput("simpson: need an odd number (>= 3) of samples");
    double s = f[0] + f[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
    return s * h / 3.0;
}

template <class F>
double simpson(F&& f, double a, double b, std::size_t n) {
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    return s * h / 3.0;
}

/// Running integral of uniformly sampled data, exact for piecewise quadratics through
/// consecutive node triples. Values between nodes come from the local quadratic.
class CumulativeIntegral {
public:
    CumulativeIntegral() = default;

    CumulativeIntegral(std::span<const double> f, double x0, double h) : x0_(x0), h_(h), f_(f.begin(), f.end()) {
        const std::size_t n = f.size();
        if (n < 3) throw InvalidInput("CumulativeIntegral: need >= 3 samples");
        c_.assign(n, 0.0);
        for (std::size_t i = 0; i + 2 < n; i += 2) {
            c_[i + 1] = c_[i] + h * (5.0 * f[i] + 8.0 * f[i + 1] - f[i + 2]) / 12.0;
            c_[i + 2] = c_[i] + h * (f[i] + 4.0 * f[i + 1] + f[i + 2]) / 3.0;
        }
        if (n % 2 == 0)  // last interval from the triple ending at n-1
            c_[n - 1] = c_[n - 2] + h * (-f[n - 3] + 8.0 * f[n - 2] + 5.0 * f[n - 1]) / 12.0;
    }

    double total() const { return c_.back(); }
    std::size_t size() const { return c_.size(); }
    double node(std::size_t i) const { return c_[i]; }

    /// Integral from x0 to x (clamped to the sampled range).
    double operator()(double x) const {
        const std::size_t n = c_.size();
        double u = (x - x0_) / h_;
        if (u <= 0.0) return 0.0;
        if (u >= static_cast<double>(n - 1)) return c_[n - 1];
        std::size_t i = static_cast<std::size_t>(u);
        const double th = u - static_cast<double>(i);
        if (th == 0.0) return c_[i];
        if (i + 2 < n) {
            const double f0 = f_[i], f1 = f_[i + 1], f2 = f_[i + 2];
            return c_[i] + h_ * (f0 * th + (-3.0 * f0 + 4.0 * f1 - f2) * th * th / 4.0 +
                                 (f0 - 2.0 * f1 + f2) * th * th * th / 6.0);
        }
        const double fm = f_[i - 1], f0 = f_[i], f1 = f_[i + 1];
        return c_[i] + h_ * (f0 * th + (f1 - fm) * th * th / 4.0 + (f1 - 2.0 * f0 + fm) * th * th * th / 6.0);
    }

private:
    double x0_ = 0.0, h_ = 1.0;
    std::vector<double> f_;
    std::vector<double> c_;
};

}  // namespace tbw::numeric

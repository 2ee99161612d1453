#pragma once

#include <cmath>

namespace tbw::numeric {

/// Exact one-step map for q'' + w^2 q = f(t) with f linear over the step (undamped).
class SdofPropagator {
public:
    SdofPropagator() = default;

    SdofPropagator(double omega, double dt) : w_(omega), dt_(dt) {
        const double th = omega * dt;
        c_ = std::cos(th);
        s1_ = omega > 0.0 ? std::sin(th) / omega : dt;
        // (1 - cos) / w^2 and (dt - sin/w) / w^2 without cancellation for small w dt
        if (th < 1e-2) {
            const double t2 = th * th;
            c2_ = dt * dt * (0.5 - t2 / 24.0 + t2 * t2 / 720.0);
            s3_ = dt * dt * dt * (1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0);
        } else {
            const double sh = std::sin(0.5 * th);
            c2_ = 2.0 * sh * sh / (omega * omega);
            s3_ = (dt - std::sin(th) / omega) / (omega * omega);
        }
    }

    double omega() const { return w_; }
    double dt() const { return dt_; }

    /// Advances (q, v) one step with force-per-mass f0 at the start and f1 at the end.
    void step(double& q, double& v, double f0, double f1) const {
        const double sl = (f1 - f0) / dt_;
        const double qn = q * c_ + v * s1_ + f0 * c2_ + sl * s3_;
        const double vn = -w_ * w_ * q * s1_ + v * c_ + f0 * s1_ + sl * c2_;
        q = qn;
        v = vn;
    }

private:
    double w_ = 0.0, dt_ = 1.0;
    double c_ = 1.0, s1_ = 0.0, c2_ = 0.0, s3_ = 0.0;
};

}  // namespace tbw::numeric

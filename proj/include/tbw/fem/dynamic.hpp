#pragma once

// Modal-dynamic transient on the finite-element model: consistent nodal loads from
// k_l U_g(x, t), projected onto M-orthonormal modes, integrated with the same exact
// SDOF propagator as the semi-analytical path.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "tbw/fem/model.hpp"
#include "tbw/numeric/sdof.hpp"
#include "tbw/response/ground_motion.hpp"

namespace tbw::fem {

struct DynamicOptions {
    double steps_per_period = 40.0;
    double t_end = 0.0;  ///< 0: t_g + L / C_ph
    std::vector<double> snapshot_times;
    bool track_energy = false;
};

struct FESnapshot {
    double t = 0.0;
    std::vector<double> y;  ///< translation at the nodes
};

struct FEResponse {
    std::vector<double> x;          ///< node coordinates
    std::vector<FESnapshot> snapshots;
    double U_p_max = 0.0;
    double ratio = 0.0;
    double dt = 0.0;
    std::size_t steps = 0;
    int n_modes = 0;
    /// max over steps of |E(t) - W(t)| / max_{s <= t} E(s), E = kinetic + strain + spring
    /// energy, W = cumulative work of the ground forcing (0 when not tracked)
    double energy_error = 0.0;
    double final_energy = 0.0;
    double final_work = 0.0;
};

inline FEResponse modal_dynamic(const FEModel& f, const FEModes& modes, const GroundMotion& gm, int n_modes = -1,
                                DynamicOptions o = {}) {
    validate(gm);
    const int nm = n_modes < 0 ? modes.size() : std::min(n_modes, modes.size());
    if (nm < 1) throw InvalidInput("modal_dynamic: need at least one mode");
    const double L = f.cfg.L;
    const double t_end = o.t_end > 0.0 ? o.t_end : gm.t_g + gm.delay(L);
    double wmax = 0.0;
    for (int j = 0; j < nm; ++j) wmax = std::max(wmax, modes.omega[j]);
    const double period = std::min(wmax > 0.0 ? 2.0 * std::numbers::pi / wmax : 1e300, 2.0 * std::numbers::pi / gm.omega_f);
    const std::size_t nt = static_cast<std::size_t>(std::ceil(t_end / (period / o.steps_per_period) - 1e-9));
    const double dt = t_end / static_cast<double>(nt);

    // Gauss-point projection G(gp, n) so that F_n(t) = sum_gp G(gp, n) U_g(x_gp, t)
    const int ne = f.n_nodes - 1;
    const int ng = static_cast<int>(kGaussX.size());
    const double phi = 12.0 * f.cfg.flexural_rigidity() / (f.cfg.shear_rigidity() * f.h * f.h);
    std::vector<double> xg(static_cast<std::size_t>(ne * ng));
    Eigen::MatrixXd G(ne * ng, nm);
    for (int g = 0; g < ng; ++g) {
        const ElementShape s = element_shape(kGaussX[g], f.h, phi);
        const double w = f.cfg.k_l() * kGaussW[g] * f.h;
        for (int e = 0; e < ne; ++e) {
            const int row = e * ng + g;
            xg[row] = f.x[e] + kGaussX[g] * f.h;
            for (int n = 0; n < nm; ++n) {
                double v = 0.0;
                for (int a = 0; a < 4; ++a) v += s.N[a] * modes.Phi(2 * e + a, n);
                G(row, n) = w * v;
            }
        }
    }
    Eigen::MatrixXd T(f.n_nodes, nm);
    for (int i = 0; i < f.n_nodes; ++i) T.row(i) = modes.Phi.row(2 * i).head(nm);

    Eigen::VectorXd u(ne * ng);
    auto force = [&](double t, Eigen::VectorXd& F) {
        for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = ground_displacement(gm, xg[i], t);
        F.noalias() = G.transpose() * u;
    };

    std::vector<numeric::SdofPropagator> prop(nm), half(nm);
    for (int j = 0; j < nm; ++j) {
        prop[j] = numeric::SdofPropagator(modes.omega[j], dt);
        half[j] = numeric::SdofPropagator(modes.omega[j], 0.5 * dt);
    }

    FEResponse r;
    r.x = f.x;
    r.dt = dt;
    r.steps = nt;
    r.n_modes = nm;
    std::vector<double> snaps = o.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;

    Eigen::VectorXd q = Eigen::VectorXd::Zero(nm), v = Eigen::VectorXd::Zero(nm), F0, F1;
    force(0.0, F0);
    double work = 0.0, emax = 0.0;
    auto snapshot = [&](double ts, const Eigen::VectorXd& qs) {
        const Eigen::VectorXd y = T * qs;
        r.snapshots.push_back({ts, std::vector<double>(y.data(), y.data() + y.size())});
    };
    while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) snapshot(snaps[next_snap++], q);

    for (std::size_t k = 1; k <= nt; ++k) {
        const double t0 = dt * static_cast<double>(k - 1), t1 = dt * static_cast<double>(k);
        force(t1, F1);
        while (next_snap < snaps.size() && snaps[next_snap] <= t1) {
            const double ts = snaps[next_snap++];
            Eigen::VectorXd qs = q;
            if (ts > t0) {
                Eigen::VectorXd Fs;
                force(ts, Fs);
                for (int j = 0; j < nm; ++j) {
                    const numeric::SdofPropagator p(modes.omega[j], ts - t0);
                    double qq = q(j), vv = v(j);
                    p.step(qq, vv, F0(j), Fs(j));
                    qs(j) = qq;
                }
            }
            snapshot(ts, qs);
        }
        double pw0 = 0.0, pwm = 0.0, pw1 = 0.0;
        if (o.track_energy) {
            // Simpson on the power of the applied (linearly interpolated) force with the exact mid-step state
            for (int j = 0; j < nm; ++j) {
                double qq = q(j), vv = v(j);
                const double fm = 0.5 * (F0(j) + F1(j));
                pw0 += F0(j) * vv;
                half[j].step(qq, vv, F0(j), fm);
                pwm += fm * vv;
            }
        }
        for (int j = 0; j < nm; ++j) {
            double qq = q(j), vv = v(j);
            prop[j].step(qq, vv, F0(j), F1(j));
            q(j) = qq;
            v(j) = vv;
        }
        F0.swap(F1);
        const double ymax = (T * q).cwiseAbs().maxCoeff();
        r.U_p_max = std::max(r.U_p_max, ymax);
        if (o.track_energy) {
            for (int j = 0; j < nm; ++j) pw1 += F0(j) * v(j);
            work += dt / 6.0 * (pw0 + 4.0 * pwm + pw1);
            double e = 0.0;
            for (int j = 0; j < nm; ++j) e += 0.5 * (v(j) * v(j) + modes.omega[j] * modes.omega[j] * q(j) * q(j));
            emax = std::max(emax, e);
            if (emax > 0.0) r.energy_error = std::max(r.energy_error, std::abs(e - work) / emax);
            r.final_energy = e;
            r.final_work = work;
        }
    }
    r.ratio = gm.D_max > 0.0 ? r.U_p_max / gm.D_max : 0.0;
    return r;
}

}  // namespace tbw::fem

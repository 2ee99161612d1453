#pragma once

// Modal superposition of the forced response to a travelling ground wave.
//
// Each mode obeys M_n q'' + M_n w_n^2 q = F_n(t) with
//   M_n = int m phi^2 + m r^2 psi^2 dx,   F_n = int k_l U_g(x, t) phi_n(x) dx,
// and y(x, t) = sum_n phi_n(x) q_n(t).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tbw/numeric/quadrature.hpp"
#include "tbw/numeric/sdof.hpp"
#include "tbw/response/ground_motion.hpp"
#include "tbw/spectrum/mode_shape.hpp"

namespace tbw {

struct ResponseOptions {
    int n_modes = 0;                  ///< > 0 overrides the truncation rule
    double truncation_factor = 3.0;   ///< keep w_n <= max(truncation_factor w_f, w2_factor w2)
    double w2_factor = 1.5;
    int mode_cap = 1000;
    double max_dx = 1.0;              ///< [m]
    double points_per_wavelength = 20.0;
    double steps_per_period = 40.0;
    double t_end = 0.0;               ///< 0: t_g + L / C_ph
    int out_x = 201;                  ///< caps on the stored field (the maximum uses every node/step)
    int out_t = 501;
    std::vector<double> snapshot_times;
};

struct ModalSystem {
    SystemConfig cfg;
    std::vector<ModeShape> modes;
    std::vector<double> M;      ///< generalized masses [kg m]
    std::vector<double> x;      ///< quadrature nodes (uniform, odd count)
    double h = 0.0;
    Eigen::MatrixXd Phi;        ///< phi_n at the nodes, nx by n_modes
    Eigen::MatrixXd Psi;        ///< psi_n at the nodes

    int size() const { return static_cast<int>(modes.size()); }
};

namespace detail {

/// Largest spatial wavenumber any of the modes oscillates with.
inline double max_mode_wavenumber(const SystemConfig& cfg, const std::vector<ModeShape>& modes) {
    if (modes.empty()) return 0.0;
    const CutoffFrequencies cut = cutoff_frequencies(cfg);
    double k = 0.0;
    for (const auto& m : modes) {
        const auto w = wavenumbers(cfg, cut, m.omega);
        k = std::max({k, w[0], w[1]});
    }
    return k;
}

inline double resolution_spacing(double max_dx, double ppw, double k_mode, double k_wave) {
    double h = max_dx;
    if (k_mode > 0.0) h = std::min(h, 2.0 * std::numbers::pi / k_mode / ppw);
    if (k_wave > 0.0) h = std::min(h, 2.0 * std::numbers::pi / k_wave / ppw);
    return h;
}

}  // namespace detail

/// Samples the modes on a Simpson grid of spacing <= h_max and computes generalized masses.
inline ModalSystem build_modal_system(const SystemConfig& cfg, std::vector<ModeShape> modes, double h_max) {
    ModalSystem s;
    s.cfg = cfg;
    s.modes = std::move(modes);
    const std::size_t n = numeric::simpson_intervals(0.0, cfg.L, h_max, 10);
    s.h = cfg.L / static_cast<double>(n);
    s.x.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) s.x[i] = s.h * static_cast<double>(i);
    s.x.back() = cfg.L;
    const int nm = s.size();
    s.Phi.resize(static_cast<Eigen::Index>(n + 1), nm);
    s.Psi.resize(static_cast<Eigen::Index>(n + 1), nm);
    const double m = cfg.m_l, mr2 = cfg.rotary_inertia();
    s.M.resize(nm);
    std::vector<double> g(n + 1);
    for (int j = 0; j < nm; ++j) {
        for (std::size_t i = 0; i <= n; ++i) {
            const ModeSample ms = evaluate_mode_full(s.modes[j], s.x[i]);
            s.Phi(static_cast<Eigen::Index>(i), j) = ms.phi;
            s.Psi(static_cast<Eigen::Index>(i), j) = ms.psi;
            g[i] = m * ms.phi * ms.phi + mr2 * ms.psi * ms.psi;
        }
        s.M[j] = numeric::simpson(g, s.h);
        if (!(s.M[j] > 0.0)) throw NumericalFailure("generalized mass is not positive");
    }
    return s;
}

inline double generalized_mass(const ModeShape& mode, const SystemConfig& cfg) {
    const double k = detail::max_mode_wavenumber(cfg, {mode});
    const double h = detail::resolution_spacing(1.0, 20.0, k, 0.0);
    const std::size_t n = numeric::simpson_intervals(0.0, cfg.L, h, 200);
    const double m = cfg.m_l, mr2 = cfg.rotary_inertia();
    const double M = numeric::simpson(
        [&](double x) {
            const ModeSample s = evaluate_mode_full(mode, std::min(x, cfg.L));
            return m * s.phi * s.phi + mr2 * s.psi * s.psi;
        },
        0.0, cfg.L, n);
    if (!(M > 0.0)) throw NumericalFailure("generalized mass is not positive");
    return M;
}

/// Part of [0, L] where the ground is moving at time t.
inline std::pair<double, double> active_window(const GroundMotion& gm, double L, double t) {
    if (std::isinf(gm.C_ph)) return (t >= 0.0 && t <= gm.t_g) ? std::pair{0.0, L} : std::pair{0.0, 0.0};
    return {std::max(0.0, gm.C_ph * (t - gm.t_g)), std::min(L, gm.C_ph * t)};
}

/// Reference evaluation of F_n(t) by Simpson over the active window.
/// `spacing` (0 = automatic) must satisfy the resolution rule
/// h <= min(1 m, wavelength / 20, shortest modal wavelength / 20).
inline double modal_force(const ModeShape& mode, const SystemConfig& cfg, const GroundMotion& gm, double t,
                          double spacing = 0.0) {
    if (!(t >= 0.0)) throw InvalidInput("modal_force: t must be >= 0");
    const double k_mode = detail::max_mode_wavenumber(cfg, {mode});
    const double rule = detail::resolution_spacing(1.0, 20.0, k_mode, gm.wavenumber());
    if (spacing > 0.0 && spacing > rule * (1.0 + 1e-12))
        throw InvalidInput("modal_force: spacing " + std::to_string(spacing) + " m coarser than resolution limit " +
                           std::to_string(rule) + " m");
    const auto [a, b] = active_window(gm, cfg.L, t);
    if (!(b > a)) return 0.0;
    // automatic spacing is ten times finer than the rule so the reference is accurate to ~1e-9
    const double h = spacing > 0.0 ? spacing : rule / 10.0;
    const std::size_t n = numeric::simpson_intervals(a, b, h, 2);
    const double k = cfg.k_l();
    return numeric::simpson(
        [&](double x) { return k * ground_displacement(gm, x, t) * evaluate_mode(mode, std::clamp(x, 0.0, cfg.L)).phi; },
        a, b, n);
}

/// F_n(t) for all modes at once: with kappa = w_f / C_ph,
///   F_n = k D [sin(w t) (Ic(b) - Ic(a)) - cos(w t) (Is(b) - Is(a))],
/// Ic, Is running integrals of phi_n cos(kappa x), phi_n sin(kappa x).
class ModalForceTable {
public:
    ModalForceTable(const ModalSystem& s, const GroundMotion& gm, int n_modes = -1)
        : s_(s), gm_(gm), nm_(n_modes < 0 ? s.size() : n_modes) {
        const Eigen::Index nx = static_cast<Eigen::Index>(s.x.size());
        const double kap = gm.wavenumber();
        cosk_.resize(nx);
        sink_.resize(nx);
        for (Eigen::Index i = 0; i < nx; ++i) {
            cosk_(i) = std::cos(kap * s.x[i]);
            sink_(i) = std::sin(kap * s.x[i]);
        }
        Ic_.setZero(nx, nm_);
        Is_.setZero(nx, nm_);
        const double h = s.h;
        auto gc = [&](Eigen::Index i) { return (s.Phi.row(i).head(nm_) * cosk_(i)).eval(); };
        auto gs = [&](Eigen::Index i) { return (s.Phi.row(i).head(nm_) * sink_(i)).eval(); };
        for (Eigen::Index i = 0; i + 2 < nx; i += 2) {
            const auto c0 = gc(i), c1 = gc(i + 1), c2 = gc(i + 2);
            const auto s0 = gs(i), s1 = gs(i + 1), s2 = gs(i + 2);
            Ic_.row(i + 1) = Ic_.row(i) + h * (5.0 * c0 + 8.0 * c1 - c2) / 12.0;
            Ic_.row(i + 2) = Ic_.row(i) + h * (c0 + 4.0 * c1 + c2) / 3.0;
            Is_.row(i + 1) = Is_.row(i) + h * (5.0 * s0 + 8.0 * s1 - s2) / 12.0;
            Is_.row(i + 2) = Is_.row(i) + h * (s0 + 4.0 * s1 + s2) / 3.0;
        }
    }

    int size() const { return nm_; }

    void evaluate(double t, Eigen::VectorXd& F) const {
        F.setZero(nm_);
        const auto [a, b] = active_window(gm_, s_.cfg.L, t);
        if (!(b > a) || gm_.D_max == 0.0) return;
        const double w = gm_.omega_f;
        const double sc = std::sin(w * t), cc = std::cos(w * t);
        Eigen::RowVectorXd ic(nm_), is(nm_);
        cumulative(b, ic, is);
        Eigen::RowVectorXd ia(nm_), isa(nm_);
        cumulative(a, ia, isa);
        F = (s_.cfg.k_l() * gm_.D_max * (sc * (ic - ia) - cc * (is - isa))).transpose();
    }

private:
    void cumulative(double x, Eigen::RowVectorXd& c, Eigen::RowVectorXd& s) const {
        const Eigen::Index n = static_cast<Eigen::Index>(s_.x.size());
        const double u = x / s_.h;
        if (u <= 0.0) {
            c.setZero();
            s.setZero();
            return;
        }
        if (u >= static_cast<double>(n - 1)) {
            c = Ic_.row(n - 1);
            s = Is_.row(n - 1);
            return;
        }
        const Eigen::Index i = static_cast<Eigen::Index>(u);
        const double th = u - static_cast<double>(i);
        c = Ic_.row(i);
        s = Is_.row(i);
        if (th == 0.0) return;
        // integrate the quadratic through three nodes from x_i to x
        const Eigen::Index j = (i + 2 < n) ? i : i - 1;
        const double o = static_cast<double>(i - j);  // position of x_i inside the triple
        const double t0 = o, t1 = o + th;
        auto w0 = [](double t) { return t - 0.75 * t * t + t * t * t / 6.0; };
        auto w1 = [](double t) { return t * t - t * t * t / 3.0; };
        auto w2 = [](double t) { return -0.25 * t * t + t * t * t / 6.0; };
        const double a0 = s_.h * (w0(t1) - w0(t0)), a1 = s_.h * (w1(t1) - w1(t0)), a2 = s_.h * (w2(t1) - w2(t0));
        const auto p0 = s_.Phi.row(j).head(nm_), p1 = s_.Phi.row(j + 1).head(nm_), p2 = s_.Phi.row(j + 2).head(nm_);
        c += a0 * cosk_(j) * p0 + a1 * cosk_(j + 1) * p1 + a2 * cosk_(j + 2) * p2;
        s += a0 * sink_(j) * p0 + a1 * sink_(j + 1) * p1 + a2 * sink_(j + 2) * p2;
    }

    const ModalSystem& s_;
    GroundMotion gm_;
    int nm_;
    Eigen::VectorXd cosk_, sink_;
    Eigen::MatrixXd Ic_, Is_;
};

struct ModalHistory {
    std::vector<double> q;
    std::vector<double> v;
};

/// Integrates q'' + w_n^2 q = F_n / M_n from rest on a uniform grid with the exact
/// propagator for piecewise-linear forcing. Requires dt <= min(2 pi / w_n, 2 pi / w_f) / 40.
inline ModalHistory integrate_modal(double omega_n, double M_n, std::span<const double> forcing,
                                    std::span<const double> t_grid, double omega_f = 0.0) {
    if (forcing.size() != t_grid.size()) throw InvalidInput("integrate_modal: forcing and time grid differ in length");
    if (!(M_n > 0.0)) throw InvalidInput("integrate_modal: M_n must be > 0");
    const std::size_t n = t_grid.size();
    ModalHistory out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    if (n < 2) return out;
    const double dt = (t_grid[n - 1] - t_grid[0]) / static_cast<double>(n - 1);
    if (!(dt > 0.0)) throw InvalidInput("integrate_modal: time grid must increase");
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(t_grid[i] - t_grid[i - 1] - dt) > 1e-9 * dt)
            throw InvalidInput("integrate_modal: time grid must be uniform");
    double period = 2.0 * std::numbers::pi / omega_n;
    if (omega_f > 0.0) period = std::min(period, 2.0 * std::numbers::pi / omega_f);
    if (dt > period / 40.0 * (1.0 + 1e-9))
        throw InvalidInput("integrate_modal: dt exceeds 1/40 of the shortest period");
    const numeric::SdofPropagator prop(omega_n, dt);
    double q = 0.0, v = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        prop.step(q, v, forcing[i - 1] / M_n, forcing[i] / M_n);
        out.q[i] = q;
        out.v[i] = v;
    }
    return out;
}

struct ResponseField {
    std::vector<double> x_grid;
    std::vector<double> t_grid;
    Eigen::MatrixXd y;        ///< y(x_i, t_j), rows follow x_grid
    double U_p_max = 0.0;     ///< max |y| over every quadrature node and time step
    double U_g_max = 0.0;     ///< D_max
    double ratio = 0.0;
    double x_at_max = 0.0;
    double t_at_max = 0.0;
    int n_modes = 0;
};

/// y(x, t) = sum_n phi_n(x) q_n(t) on the given grids (q_all is n_modes by t_grid.size()).
inline ResponseField superpose(const ModalSystem& s, const Eigen::MatrixXd& q_all, const std::vector<double>& x_grid,
                               const std::vector<double>& t_grid, double D_max = 0.0) {
    if (q_all.cols() != static_cast<Eigen::Index>(t_grid.size()))
        throw InvalidInput("superpose: q_all columns must match t_grid");
    const Eigen::Index nm = q_all.rows();
    Eigen::MatrixXd P(static_cast<Eigen::Index>(x_grid.size()), nm);
    for (Eigen::Index i = 0; i < P.rows(); ++i)
        for (Eigen::Index j = 0; j < nm; ++j) P(i, j) = evaluate_mode(s.modes[j], x_grid[i]).phi;
    ResponseField f;
    f.x_grid = x_grid;
    f.t_grid = t_grid;
    f.y = P * q_all;
    f.n_modes = static_cast<int>(nm);
    f.U_g_max = D_max;
    if (f.y.size() > 0) {
        Eigen::Index r = 0, c = 0;
        f.U_p_max = f.y.cwiseAbs().maxCoeff(&r, &c);
        f.x_at_max = x_grid[r];
        f.t_at_max = t_grid[c];
    }
    f.ratio = D_max > 0.0 ? f.U_p_max / D_max : 0.0;
    return f;
}

struct Snapshot {
    double t = 0.0;
    std::vector<double> x;   ///< quadrature nodes
    std::vector<double> y;
    std::vector<double> q;   ///< modal coordinates at t
};

struct ResponseResult {
    double ratio = 0.0;
    ResponseField field;
    std::vector<Snapshot> snapshots;
    double dt = 0.0;
    std::size_t steps = 0;
    std::vector<ModeShape> modes;  ///< modes used (filled by response_ratio)
};

/// Snapshot displacement at arbitrary stations from its modal coordinates.
inline std::vector<double> evaluate_snapshot(const std::vector<ModeShape>& modes, const Snapshot& s,
                                             const std::vector<double>& x) {
    if (s.q.size() > modes.size()) throw InvalidInput("evaluate_snapshot: fewer modes than modal coordinates");
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < s.q.size(); ++j) y[i] += evaluate_mode(modes[j], x[i]).phi * s.q[j];
    return y;
}

/// Number of leading modes kept for forcing frequency w_f under the truncation rule.
inline int truncated_mode_count(const ModalSystem& s, double omega_f, const ResponseOptions& o) {
    if (o.n_modes > 0) return std::min(o.n_modes, s.size());
    const CutoffFrequencies cut = cutoff_frequencies(s.cfg);
    const double wmax = std::max(o.truncation_factor * omega_f, o.w2_factor * cut.w2);
    int n = 0;
    while (n < s.size() && n < o.mode_cap && s.modes[n].omega <= wmax) ++n;
    return std::max(n, 1);
}

/// Time-steps the first n_modes modes of s under gm and tracks the peak of |y| over all
/// quadrature nodes and steps. Stores a strided field and exact-time snapshots.
inline ResponseResult run_response(const ModalSystem& s, const GroundMotion& gm, int n_modes, const ResponseOptions& o) {
    validate(gm);
    const int nm = n_modes;
    const double L = s.cfg.L;
    double t_end = o.t_end > 0.0 ? o.t_end : gm.t_g + gm.delay(L);
    double wmax = 0.0;
    for (int j = 0; j < nm; ++j) wmax = std::max(wmax, s.modes[j].omega);
    const double period = std::min(2.0 * std::numbers::pi / wmax, 2.0 * std::numbers::pi / gm.omega_f);
    const std::size_t nt = static_cast<std::size_t>(std::ceil(t_end / (period / o.steps_per_period) - 1e-9));
    const double dt = t_end / static_cast<double>(nt);

    const ModalForceTable table(s, gm, nm);
    std::vector<numeric::SdofPropagator> prop(nm);
    Eigen::VectorXd invM(nm);
    for (int j = 0; j < nm; ++j) {
        prop[j] = numeric::SdofPropagator(s.modes[j].omega, dt);
        invM(j) = 1.0 / s.M[j];
    }
    const Eigen::Index nx = static_cast<Eigen::Index>(s.x.size());
    const auto Phi = s.Phi.leftCols(nm);

    // output sampling
    const std::size_t sx = std::max<std::size_t>(1, (s.x.size() - 1 + o.out_x - 2) / std::max(1, o.out_x - 1));
    const std::size_t st = std::max<std::size_t>(1, (nt + o.out_t - 2) / std::max(1, o.out_t - 1));
    std::vector<Eigen::Index> xrows;
    ResponseResult res;
    for (std::size_t i = 0; i < s.x.size(); i += sx) xrows.push_back(static_cast<Eigen::Index>(i));
    if (xrows.back() != nx - 1) xrows.push_back(nx - 1);
    for (auto r : xrows) res.field.x_grid.push_back(s.x[r]);
    std::vector<std::size_t> tcols;
    for (std::size_t k = 0; k <= nt; k += st) tcols.push_back(k);
    if (tcols.back() != nt) tcols.push_back(nt);
    for (auto k : tcols) res.field.t_grid.push_back(dt * static_cast<double>(k));
    res.field.y.setZero(static_cast<Eigen::Index>(xrows.size()), static_cast<Eigen::Index>(tcols.size()));

    std::vector<double> snaps = o.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;

    Eigen::VectorXd q = Eigen::VectorXd::Zero(nm), v = Eigen::VectorXd::Zero(nm);
    Eigen::VectorXd F0, F1;
    table.evaluate(0.0, F0);
    const Eigen::Index B = 256;
    Eigen::MatrixXd Qb(nm, B);
    std::vector<std::size_t> steps_in_block;
    double best = 0.0;
    Eigen::Index best_row = 0;
    std::size_t best_step = 0;
    std::size_t tc = 1;  // next stored column (column 0 is t = 0, all zeros)

    auto flush = [&](Eigen::Index used) {
        if (used == 0) return;
        const Eigen::MatrixXd Y = Phi * Qb.leftCols(used);
        Eigen::Index r = 0, c = 0;
        const double mx = Y.cwiseAbs().maxCoeff(&r, &c);
        if (mx > best) {
            best = mx;
            best_row = r;
            best_step = steps_in_block[c];
        }
        for (Eigen::Index c2 = 0; c2 < used; ++c2) {
            while (tc < tcols.size() && tcols[tc] < steps_in_block[c2]) ++tc;
            if (tc < tcols.size() && tcols[tc] == steps_in_block[c2]) {
                for (std::size_t i = 0; i < xrows.size(); ++i)
                    res.field.y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(tc)) = Y(xrows[i], c2);
                ++tc;
            }
        }
        steps_in_block.clear();
    };

    Eigen::Index used = 0;
    for (std::size_t k = 1; k <= nt; ++k) {
        const double t0 = dt * static_cast<double>(k - 1), t1 = dt * static_cast<double>(k);
        table.evaluate(t1, F1);
        while (next_snap < snaps.size() && snaps[next_snap] <= t1) {
            const double ts = snaps[next_snap];
            Snapshot sn;
            sn.t = ts;
            Eigen::VectorXd qs = q;
            if (ts > t0) {
                Eigen::VectorXd Fs;
                table.evaluate(ts, Fs);
                for (int j = 0; j < nm; ++j) {
                    const numeric::SdofPropagator p(s.modes[j].omega, ts - t0);
                    double qq = q(j), vv = v(j);
                    p.step(qq, vv, F0(j) * invM(j), Fs(j) * invM(j));
                    qs(j) = qq;
                }
            }
            const Eigen::VectorXd ys = Phi * qs;
            sn.x = s.x;
            sn.y.assign(ys.data(), ys.data() + ys.size());
            sn.q.assign(qs.data(), qs.data() + qs.size());
            res.snapshots.push_back(std::move(sn));
            ++next_snap;
        }
        for (int j = 0; j < nm; ++j) {
            double qq = q(j), vv = v(j);
            prop[j].step(qq, vv, F0(j) * invM(j), F1(j) * invM(j));
            q(j) = qq;
            v(j) = vv;
        }
        F0.swap(F1);
        Qb.col(used) = q;
        steps_in_block.push_back(k);
        if (++used == B) {
            flush(used);
            used = 0;
        }
    }
    flush(used);

    res.dt = dt;
    res.steps = nt;
    res.field.U_p_max = best;
    res.field.U_g_max = gm.D_max;
    res.field.ratio = gm.D_max > 0.0 ? best / gm.D_max : 0.0;
    res.field.x_at_max = s.x[static_cast<std::size_t>(best_row)];
    res.field.t_at_max = dt * static_cast<double>(best_step);
    res.field.n_modes = nm;
    res.ratio = res.field.ratio;
    return res;
}

/// Spectrum, modal system and transient response for one ground motion.
inline ResponseResult response_ratio(const SystemConfig& cfg, const GroundMotion& gm, int n_modes = 0,
                                     double t_end = 0.0, ResponseOptions o = {}) {
    validate(gm);
    if (n_modes > 0) o.n_modes = n_modes;
    if (t_end > 0.0) o.t_end = t_end;
    const CutoffFrequencies cut = cutoff_frequencies(cfg);
    std::vector<NaturalFrequency> roots;
    if (o.n_modes > 0) roots = find_natural_frequencies(cfg, 0.0, o.n_modes);
    else roots = find_natural_frequencies(cfg, std::max(o.truncation_factor * gm.omega_f, o.w2_factor * cut.w2), o.mode_cap);
    if (roots.empty()) throw NumericalFailure("response_ratio: no modes below the truncation frequency");
    std::vector<ModeShape> modes = mode_shapes(cfg, roots);
    const double h = detail::resolution_spacing(o.max_dx, o.points_per_wavelength,
                                                detail::max_mode_wavenumber(cfg, modes), gm.wavenumber());
    const ModalSystem s = build_modal_system(cfg, std::move(modes), h);
    ResponseResult r = run_response(s, gm, s.size(), o);
    r.modes = s.modes;
    return r;
}

struct SweepPoint {
    double f_hz = 0.0;
    double ratio = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;  ///< sorted by frequency
    double peak_f_hz = 0.0;
    double peak_ratio = 0.0;
};

inline std::vector<double> default_sweep_frequencies(int n = 200, double f_lo = 0.05, double f_hi = 20.0) {
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i)
        f[i] = f_lo * std::pow(f_hi / f_lo, n > 1 ? static_cast<double>(i) / (n - 1) : 0.0);
    return f;
}

/// Peak displacement ratio versus forcing frequency, each point driven for `cycles` periods.
/// Local maxima within half of the global peak are refined by `refine_levels` rounds of
/// geometric bisection towards the better neighbour.
inline SweepResult frequency_sweep(const SystemConfig& cfg, std::vector<double> f_list, double cycles, double C_ph,
                                   ResponseOptions o = {}, int refine_levels = 3) {
    if (f_list.empty()) f_list = default_sweep_frequencies();
    for (double f : f_list)
        if (!(f > 0.0)) throw InvalidInput("frequency_sweep: frequencies must be > 0");
    if (!(cycles > 0.0)) throw InvalidInput("frequency_sweep: cycles must be > 0");
    std::sort(f_list.begin(), f_list.end());
    const CutoffFrequencies cut = cutoff_frequencies(cfg);
    const double f_top = f_list.back() * (refine_levels > 0 ? 1.05 : 1.0);
    const double w_top = 2.0 * std::numbers::pi * f_top;
    std::vector<NaturalFrequency> roots =
        o.n_modes > 0 ? find_natural_frequencies(cfg, 0.0, o.n_modes)
                      : find_natural_frequencies(cfg, std::max(o.truncation_factor * w_top, o.w2_factor * cut.w2),
                                                 o.mode_cap);
    std::vector<ModeShape> modes = mode_shapes(cfg, roots);
    const double k_wave = std::isinf(C_ph) ? 0.0 : w_top / C_ph;
    const double h = detail::resolution_spacing(o.max_dx, o.points_per_wavelength,
                                                detail::max_mode_wavenumber(cfg, modes), k_wave);
    const ModalSystem s = build_modal_system(cfg, std::move(modes), h);

    auto eval = [&](double f) {
        const GroundMotion gm = GroundMotion::from_cycles(1.0, f, C_ph, cycles);
        ResponseOptions oo = o;
        oo.out_x = 2;
        oo.out_t = 2;
        return run_response(s, gm, truncated_mode_count(s, gm.omega_f, o), oo).ratio;
    };

    SweepResult r;
    for (double f : f_list) r.points.push_back({f, eval(f)});
    auto by_f = [](const SweepPoint& a, const SweepPoint& b) { return a.f_hz < b.f_hz; };

    if (refine_levels > 0 && r.points.size() >= 2) {
        double gmax = 0.0;
        for (const auto& p : r.points) gmax = std::max(gmax, p.ratio);
        std::vector<double> peaks;
        const auto& P = r.points;
        for (std::size_t i = 0; i < P.size(); ++i) {
            const bool left = i == 0 || P[i].ratio >= P[i - 1].ratio;
            const bool right = i + 1 == P.size() || P[i].ratio >= P[i + 1].ratio;
            if (left && right && P[i].ratio >= 0.5 * gmax) peaks.push_back(P[i].f_hz);
        }
        std::sort(peaks.begin(), peaks.end(), [&](double a, double b) {
            auto ra = std::find_if(P.begin(), P.end(), [&](auto& p) { return p.f_hz == a; })->ratio;
            auto rb = std::find_if(P.begin(), P.end(), [&](auto& p) { return p.f_hz == b; })->ratio;
            return ra > rb;
        });
        if (peaks.size() > 4) peaks.resize(4);
        for (double fp : peaks) {
            double fc = fp;
            for (int lev = 0; lev < refine_levels; ++lev) {
                std::sort(r.points.begin(), r.points.end(), by_f);
                auto it = std::find_if(r.points.begin(), r.points.end(), [&](auto& p) { return p.f_hz == fc; });
                const std::size_t i = static_cast<std::size_t>(it - r.points.begin());
                std::vector<SweepPoint> added;
                if (i > 0) {
                    const double fm = std::sqrt(r.points[i - 1].f_hz * fc);
                    added.push_back({fm, eval(fm)});
                }
                if (i + 1 < r.points.size()) {
                    const double fm = std::sqrt(r.points[i + 1].f_hz * fc);
                    added.push_back({fm, eval(fm)});
                }
                double bestr = it->ratio;
                for (const auto& a : added) {
                    r.points.push_back(a);
                    if (a.ratio > bestr) {
                        bestr = a.ratio;
                        fc = a.f_hz;
                    }
                }
            }
        }
    }
    std::sort(r.points.begin(), r.points.end(), by_f);
    for (const auto& p : r.points)
        if (p.ratio > r.peak_ratio) {
            r.peak_ratio = p.ratio;
            r.peak_f_hz = p.f_hz;
        }
    return r;
}

}  // namespace tbw

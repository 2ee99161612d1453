#pragma once

// Finite-element referee: 2-node Timoshenko elements with interdependent interpolation
// (cubic translation, quadratic rotation tied through phi = 12 EJ / (kappa G A h^2)),
// consistent mass with rotary inertia and consistent Winkler spring.

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "tbw/fem/banded.hpp"
#include "tbw/model.hpp"

namespace tbw::fem {

using Matrix4 = Eigen::Matrix4d;

/// 5-point Gauss-Legendre rule on [0, 1].
inline constexpr std::array<double, 5> kGaussX = {0.046910077030668, 0.230765344947158, 0.5, 0.769234655052842,
                                                   0.953089922969332};
inline constexpr std::array<double, 5> kGaussW = {0.118463442528095, 0.239314335249683, 0.284444444444444,
                                                   0.239314335249683, 0.118463442528095};

/// Shape functions at xi in [0, 1] for DOFs (w1, theta1, w2, theta2).
struct ElementShape {
    std::array<double, 4> N;    ///< translation
    std::array<double, 4> dN;   ///< d/dx of translation
    std::array<double, 4> T;    ///< rotation
    std::array<double, 4> dT;   ///< d/dx of rotation
};

inline ElementShape element_shape(double xi, double h, double phi) {
    const double c = 1.0 / (1.0 + phi);
    const double x2 = xi * xi, x3 = x2 * xi;
    ElementShape s;
    s.N = {c * (1.0 - 3.0 * x2 + 2.0 * x3 + phi * (1.0 - xi)),
           c * h * (xi - 2.0 * x2 + x3 + 0.5 * phi * (xi - x2)),
           c * (3.0 * x2 - 2.0 * x3 + phi * xi),
           c * h * (-x2 + x3 + 0.5 * phi * (x2 - xi))};
    s.dN = {c * (-6.0 * xi + 6.0 * x2 - phi) / h,
            c * (1.0 - 4.0 * xi + 3.0 * x2 + 0.5 * phi * (1.0 - 2.0 * xi)),
            c * (6.0 * xi - 6.0 * x2 + phi) / h,
            c * (-2.0 * xi + 3.0 * x2 + 0.5 * phi * (2.0 * xi - 1.0))};
    s.T = {c * 6.0 * (x2 - xi) / h,
           c * (1.0 - 4.0 * xi + 3.0 * x2 + phi * (1.0 - xi)),
           c * 6.0 * (xi - x2) / h,
           c * (-2.0 * xi + 3.0 * x2 + phi * xi)};
    s.dT = {c * 6.0 * (2.0 * xi - 1.0) / (h * h),
            c * (-4.0 + 6.0 * xi - phi) / h,
            c * 6.0 * (1.0 - 2.0 * xi) / (h * h),
            c * (-2.0 + 6.0 * xi + phi) / h};
    return s;
}

struct ElementMatrices {
    Matrix4 K;   ///< bending + shear + spring
    Matrix4 M;   ///< translational + rotary inertia
};

inline ElementMatrices element_matrices(const SystemConfig& cfg, double h) {
    const double EJ = cfg.flexural_rigidity(), GA = cfg.shear_rigidity();
    const double phi = 12.0 * EJ / (GA * h * h);
    const double m = cfg.m_l, mr2 = cfg.rotary_inertia(), k = cfg.k_l();
    ElementMatrices e{Matrix4::Zero(), Matrix4::Zero()};
    for (std::size_t g = 0; g < kGaussX.size(); ++g) {
        const ElementShape s = element_shape(kGaussX[g], h, phi);
        const double w = kGaussW[g] * h;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                e.K(a, b) += w * (EJ * s.dT[a] * s.dT[b] + GA * (s.dN[a] - s.T[a]) * (s.dN[b] - s.T[b]) +
                                  k * s.N[a] * s.N[b]);
                e.M(a, b) += w * (m * s.N[a] * s.N[b] + mr2 * s.T[a] * s.T[b]);
            }
    }
    return e;
}

/// Closed-form bending + shear stiffness of the element (no foundation).
inline Matrix4 element_stiffness_closed_form(double EJ, double GA, double h) {
    const double phi = 12.0 * EJ / (GA * h * h);
    const double c = EJ / ((1.0 + phi) * h * h * h);
    Matrix4 K;
    K << 12.0, 6.0 * h, -12.0, 6.0 * h,
         6.0 * h, (4.0 + phi) * h * h, -6.0 * h, (2.0 - phi) * h * h,
         -12.0, -6.0 * h, 12.0, -6.0 * h,
         6.0 * h, (2.0 - phi) * h * h, -6.0 * h, (4.0 + phi) * h * h;
    return c * K;
}

struct FEModel {
    SystemConfig cfg;
    double h = 0.0;
    int n_nodes = 0;
    std::vector<double> x;      ///< node coordinates
    SymBandMatrix K, M;         ///< DOF 2i translation, 2i + 1 rotation of node i

    int dof() const { return 2 * n_nodes; }
};

/// Uniform mesh with element length h (rounded so the elements tile [0, L]).
inline FEModel assemble(const SystemConfig& cfg, double h = 1.0) {
    if (!(h > 0.0)) throw InvalidInput("assemble: h must be > 0");
    validate(cfg);
    const int ne = static_cast<int>(std::ceil(cfg.L / h - 1e-9));
    if (ne < 10) throw InvalidInput("assemble: L / h must be >= 10");
    FEModel f;
    f.cfg = cfg;
    f.h = cfg.L / ne;
    f.n_nodes = ne + 1;
    f.x.resize(f.n_nodes);
    for (int i = 0; i < f.n_nodes; ++i) f.x[i] = f.h * i;
    f.x.back() = cfg.L;
    f.K = SymBandMatrix(f.dof(), 3);
    f.M = SymBandMatrix(f.dof(), 3);
    const ElementMatrices e = element_matrices(cfg, f.h);
    for (int el = 0; el < ne; ++el) {
        const int o = 2 * el;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b <= a; ++b) {
                f.K.add(o + a, o + b, e.K(a, b));
                f.M.add(o + a, o + b, e.M(a, b));
            }
    }
    return f;
}

struct FEModes {
    std::vector<double> omega;  ///< ascending [rad/s]
    Eigen::MatrixXd Phi;        ///< dof x n, M-orthonormal

    int size() const { return static_cast<int>(omega.size()); }
    /// Translational component at the nodes.
    Eigen::MatrixXd translations() const {
        Eigen::MatrixXd T(Phi.rows() / 2, Phi.cols());
        for (Eigen::Index i = 0; i < T.rows(); ++i) T.row(i) = Phi.row(2 * i);
        return T;
    }
    Eigen::MatrixXd rotations() const {
        Eigen::MatrixXd T(Phi.rows() / 2, Phi.cols());
        for (Eigen::Index i = 0; i < T.rows(); ++i) T.row(i) = Phi.row(2 * i + 1);
        return T;
    }
};

struct EigenOptions {
    Eigen::Index dense_limit = 2000;  ///< dense generalized solver up to this many DOFs
    bool force_banded = false;
};

namespace detail {

/// Deterministic sign: largest-magnitude translation of the first node that carries any is positive.
inline void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    const double vmax = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); i += 2)
        if (std::abs(v(i)) > 1e-6 * vmax) {
            if (v(i) < 0.0) v = -v;
            return;
        }
}

inline FEModes eigen_dense(const FEModel& f, int n) {
    const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(f.K.dense(), f.M.dense());
    if (es.info() != Eigen::Success) throw NumericalFailure("dense generalized eigensolver failed");
    FEModes r;
    r.Phi = es.eigenvectors().leftCols(n);
    for (int k = 0; k < n; ++k) {
        r.omega.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(k))));
        fix_sign(r.Phi.col(k));
    }
    return r;
}

inline FEModes eigen_banded(const FEModel& f, int n) {
    auto count = [&](double sigma) { return BandLDLT(f.K.shifted(f.M, sigma)).negative_count(); };
    // bracket: eigenvalue k (1-based) lies in (lo[k], hi[k]]
    double top = 1.0;
    while (count(top) < n) {
        top *= 2.0;
        if (!std::isfinite(top)) throw NumericalFailure("banded eigensolver: cannot bracket the spectrum");
    }
    const double base = -1.0 - 1e-6 * top;
    if (count(base) > 0) throw NumericalFailure("banded eigensolver: pencil is not positive semi-definite");
    std::vector<double> lo(n, base), hi(n, top), lam(n);
    for (int k = 0; k < n; ++k) {
        double a = lo[k], b = hi[k];
        while (true) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b || b - a <= 4e-16 * std::abs(b)) break;
            const Eigen::Index c = count(mid);
            for (int j = k; j < n; ++j) {
                if (j < c) hi[j] = std::min(hi[j], mid);
                else lo[j] = std::max(lo[j], mid);
            }
            if (c > k) b = mid;
            else a = mid;
        }
        lam[k] = 0.5 * (a + b);
        if (k + 1 < n) lo[k + 1] = std::max(lo[k + 1], a);
    }
    FEModes r;
    r.Phi.resize(f.dof(), n);
    const double cluster = 1e-6;
    for (int k = 0; k < n; ++k) {
        const double sig = lam[k] - std::max(1e-10 * std::abs(lam[k]), 1e-12);
        const BandLDLT fac(f.K.shifted(f.M, sig));
        Eigen::VectorXd v(f.dof());
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = std::sin(0.7 * static_cast<double>(i) + 1.3 * k + 0.1);
        std::vector<int> near;
        for (int j = 0; j < k; ++j)
            if (std::abs(lam[j] - lam[k]) <= cluster * std::max(std::abs(lam[k]), 1.0)) near.push_back(j);
        for (int it = 0; it < 5; ++it) {
            v = fac.solve(f.M.multiply(v));
            for (int j : near) v -= r.Phi.col(j).dot(f.M.multiply(v)) * r.Phi.col(j);
            const double nrm = std::sqrt(v.dot(f.M.multiply(v)));
            if (!(nrm > 0.0) || !std::isfinite(nrm)) throw NumericalFailure("banded eigensolver: inverse iteration failed");
            v /= nrm;
        }
        fix_sign(v);
        r.Phi.col(k) = v;
        r.omega.push_back(std::sqrt(std::max(0.0, lam[k])));
    }
    return r;
}

}  // namespace detail

/// Lowest n_modes eigenpairs of K phi = w^2 M phi.
inline FEModes eigen_solve(const FEModel& f, int n_modes, EigenOptions o = {}) {
    if (n_modes < 1 || n_modes > f.dof()) throw InvalidInput("eigen_solve: n_modes must be in [1, DOF count]");
    if (!o.force_banded && f.dof() <= o.dense_limit) return detail::eigen_dense(f, n_modes);
    return detail::eigen_banded(f, n_modes);
}

/// Lowest modes with w <= omega_max (at most cap).
inline FEModes eigen_solve_below(const FEModel& f, double omega_max, int cap, EigenOptions o = {}) {
    const Eigen::Index c = BandLDLT(f.K.shifted(f.M, omega_max * omega_max)).negative_count();
    const int n = static_cast<int>(std::clamp<Eigen::Index>(c, 1, std::min<Eigen::Index>(cap, f.dof())));
    return eigen_solve(f, n, o);
}

}  // namespace tbw::fem

#pragma once

// Mode-by-mode comparison of the semi-analytical spectrum against the finite-element one.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "tbw/fem/model.hpp"
#include "tbw/spectrum/mode_shape.hpp"

namespace tbw::fem {

struct ModePair {
    int sa_index = 0;   ///< 0-based
    int fem_index = 0;
    double omega_sa = 0.0;
    double omega_fem = 0.0;
    double pct_diff = 0.0;  ///< 100 (w_fem - w_sa) / w_sa
    double mac = 0.0;
    bool degenerate = false;  ///< a neighbour lies within degenerate_rel; MAC not meaningful
};

struct CompareReport {
    std::vector<ModePair> pairs;
    int n_sa = 0, n_fem = 0;
    bool count_mismatch = false;
    double max_abs_pct = 0.0;
    double mean_abs_pct = 0.0;
    double min_mac = 1.0;  ///< over non-degenerate pairs
};

inline double mac(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const double ab = a.dot(b), aa = a.squaredNorm(), bb = b.squaredNorm();
    if (aa == 0.0 || bb == 0.0) return 0.0;
    return ab * ab / (aa * bb);
}

/// sa_shapes and fem_shapes hold one sampled shape per column on a common grid.
/// Equal counts pair by index; otherwise each SA mode takes the nearest unused FEM frequency.
inline CompareReport compare(const std::vector<double>& sa_omega, const std::vector<double>& fem_omega,
                             const Eigen::MatrixXd& sa_shapes, const Eigen::MatrixXd& fem_shapes,
                             double degenerate_rel = 1e-8) {
    CompareReport r;
    r.n_sa = static_cast<int>(sa_omega.size());
    r.n_fem = static_cast<int>(fem_omega.size());
    r.count_mismatch = r.n_sa != r.n_fem;
    std::vector<bool> used(fem_omega.size(), false);
    auto near_degenerate = [&](const std::vector<double>& w, int i) {
        for (int j : {i - 1, i + 1})
            if (j >= 0 && j < static_cast<int>(w.size()) && std::abs(w[j] - w[i]) <= degenerate_rel * w[i]) return true;
        return false;
    };
    for (int i = 0; i < r.n_sa; ++i) {
        int j = -1;
        if (!r.count_mismatch) j = i;
        else {
            double best = 1e300;
            for (int k = 0; k < r.n_fem; ++k)
                if (!used[k] && std::abs(fem_omega[k] - sa_omega[i]) < best) {
                    best = std::abs(fem_omega[k] - sa_omega[i]);
                    j = k;
                }
        }
        if (j < 0) break;
        used[j] = true;
        ModePair p;
        p.sa_index = i;
        p.fem_index = j;
        p.omega_sa = sa_omega[i];
        p.omega_fem = fem_omega[j];
        p.pct_diff = 100.0 * (p.omega_fem - p.omega_sa) / p.omega_sa;
        p.mac = mac(sa_shapes.col(i), fem_shapes.col(j));
        p.degenerate = near_degenerate(sa_omega, i) || near_degenerate(fem_omega, j);
        r.pairs.push_back(p);
    }
    double sum = 0.0;
    for (const auto& p : r.pairs) {
        r.max_abs_pct = std::max(r.max_abs_pct, std::abs(p.pct_diff));
        sum += std::abs(p.pct_diff);
        if (!p.degenerate) r.min_mac = std::min(r.min_mac, p.mac);
    }
    if (!r.pairs.empty()) r.mean_abs_pct = sum / static_cast<double>(r.pairs.size());
    return r;
}

/// Samples phi of each SA mode at the FEM nodes and compares with the FEM translations.
inline CompareReport compare(const std::vector<ModeShape>& sa, const FEModel& f, const FEModes& fem,
                             double degenerate_rel = 1e-8) {
    Eigen::MatrixXd S(f.n_nodes, static_cast<Eigen::Index>(sa.size()));
    std::vector<double> w;
    for (std::size_t j = 0; j < sa.size(); ++j) {
        w.push_back(sa[j].omega);
        for (int i = 0; i < f.n_nodes; ++i) S(i, static_cast<Eigen::Index>(j)) = evaluate_mode(sa[j], f.x[i]).phi;
    }
    return compare(w, fem.omega, S, fem.translations(), degenerate_rel);
}

}  // namespace tbw::fem

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/SVD>

#include "tbw/spectrum/roots.hpp"

namespace tbw {

struct ModeNormalization {
    double scale = 1.0;  ///< factor applied to the raw null vector
    double x_peak = 0.0; ///< location of max |phi|
    bool flipped = false;
};

/// One eigenpair. `C` holds the constants of the four basis columns [even0, even1, odd0, odd1]
/// of `basis`; the two of the other symmetry class are zero.
struct ModeShape {
    double omega = 0.0;
    SpectrumCase spectrum_case = SpectrumCase::Below1;
    Parity parity = Parity::Even;
    std::array<double, 4> C{};
    double L = 0.0;
    ModeNormalization norm;
    ParityBasis basis;
    bool degenerate = false; ///< another mode of the opposite class shares this frequency

    // Eigenvalue parameters of the active basis.
    double a2() const { return basis.a2(); }
    double beta() const { return basis.beta(); }
    double s1() const { return basis.s1(); }
    double s2() const { return basis.s2(); }
};

/// phi and its first three derivatives, psi and psi' at one abscissa.
struct ModeSample {
    double phi = 0.0, dphi = 0.0, d2phi = 0.0, d3phi = 0.0;
    double psi = 0.0, dpsi = 0.0;
};

namespace detail {

inline ModeSample evaluate_raw(const ParityBasis& b, Parity p, const std::array<double, 2>& c, double x, double L) {
    const double z = x - 0.5 * L;
    ModeSample s;
    for (int j = 0; j < 2; ++j) {
        if (c[j] == 0.0) continue;
        const ColumnEval e = b.column(p, j, z);
        s.phi += c[j] * e.phi[0];
        s.dphi += c[j] * e.phi[1];
        s.d2phi += c[j] * e.phi[2];
        s.d3phi += c[j] * e.phi[3];
        s.psi += c[j] * e.psi;
        s.dpsi += c[j] * e.dpsi;
    }
    return s;
}

inline std::array<double, 2> parity_coeffs(const ModeShape& m) {
    return m.parity == Parity::Even ? std::array<double, 2>{m.C[0], m.C[1]} : std::array<double, 2>{m.C[2], m.C[3]};
}

}  // namespace detail

inline ModeSample evaluate_mode_full(const ModeShape& m, double x) {
    const double tol = 1e-12 * m.L;
    if (!(x >= -tol && x <= m.L + tol)) throw InvalidInput("evaluate_mode: x outside [0, L]");
    return detail::evaluate_raw(m.basis, m.parity, detail::parity_coeffs(m), x, m.L);
}

struct PhiPsi {
    double phi = 0.0;
    double psi = 0.0;
};

inline PhiPsi evaluate_mode(const ModeShape& m, double x) {
    const ModeSample s = evaluate_mode_full(m, x);
    return {s.phi, s.psi};
}

/// Whether omega makes the parity-p end problem singular. Away from cut-offs this looks for
/// a sign change of the scaled determinant within omega (1 +- 1e-9).
inline bool is_parity_eigenfrequency(const SystemConfig& cfg, const CutoffFrequencies& cut, double omega,
                                     Parity p) {
    const SpectrumCase sc = classify(omega, cut);
    if (sc == SpectrumCase::At1 || sc == SpectrumCase::At2 || sc == SpectrumCase::At3)
        return transition_is_eigenfrequency(cfg, cut, sc, p, 1e-8);
    const double d0 = parity_determinant(cfg, cut, omega, p);
    if (std::abs(d0) <= 1e-12) return true;
    const double eta = 1e-9;
    const double dm = parity_determinant(cfg, cut, omega * (1.0 - eta), p);
    const double dp = parity_determinant(cfg, cut, omega * (1.0 + eta), p);
    return detail::sign_of(dm) * detail::sign_of(dp) < 0;
}

namespace detail {

inline ModeShape build_mode(const SystemConfig& cfg, const CutoffFrequencies& cut, double omega, Parity p) {
    ModeShape m;
    m.omega = omega;
    m.spectrum_case = classify(omega, cut);
    m.parity = p;
    m.L = cfg.L;
    m.basis = basis_for(cfg, cut, omega, m.spectrum_case);

    const ParityMatrix pm = parity_matrix(m.basis, p);
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(pm.A, Eigen::ComputeFullV);
    const Eigen::Vector2d v = svd.matrixV().col(1);
    std::array<double, 2> c{v(0) / pm.col_scale[0], v(1) / pm.col_scale[1]};

    // Peak of |phi|: coarse sample then golden-section refinement around the best sample.
    const int n = 1000;
    const double L = cfg.L;
    auto absphi = [&](double x) { return std::abs(evaluate_raw(m.basis, p, c, x, L).phi); };
    int ibest = 0;
    double best = -1.0;
    for (int i = 0; i <= n; ++i) {
        const double a = absphi(L * i / n);
        if (a > best) {
            best = a;
            ibest = i;
        }
    }
    double lo = L * std::max(ibest - 1, 0) / n, hi = L * std::min(ibest + 1, n) / n;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = absphi(x1), f2 = absphi(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-13 * L; ++it) {
        if (f1 > f2) {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo); f1 = absphi(x1);
        } else {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo); f2 = absphi(x2);
        }
    }
    double xpk = L * ibest / n, peak = best;
    for (double x : {x1, x2, lo, hi})
        if (absphi(x) > peak) {
            peak = absphi(x);
            xpk = x;
        }
    if (!(peak > 0.0)) throw NumericalFailure("mode_shape: null vector gives phi == 0");

    double scale = 1.0 / peak;
    const ModeSample s0 = evaluate_raw(m.basis, p, c, 0.0, L);
    bool flip = false;
    if (std::abs(s0.phi * scale) >= 1e-9) flip = s0.phi < 0.0;
    else flip = s0.dphi < 0.0;
    if (flip) scale = -scale;
    c[0] *= scale;
    c[1] *= scale;
    if (p == Parity::Even) m.C = {c[0], c[1], 0.0, 0.0};
    else m.C = {0.0, 0.0, c[0], c[1]};
    m.norm = {scale, xpk, flip};
    return m;
}

}  // namespace detail

/// All independent modes at omega (one, or an even/odd pair when both classes are singular).
inline std::vector<ModeShape> mode_shapes(const SystemConfig& cfg, double omega) {
    if (!(omega > 0.0)) throw InvalidInput("mode_shape: omega must be > 0");
    const CutoffFrequencies cut = cutoff_frequencies(cfg);
    std::vector<ModeShape> out;
    for (Parity p : {Parity::Even, Parity::Odd})
        if (is_parity_eigenfrequency(cfg, cut, omega, p)) out.push_back(detail::build_mode(cfg, cut, omega, p));
    if (out.empty()) throw NotAnEigenfrequency("mode_shape: boundary matrix is not singular at omega");
    if (out.size() == 2) out[0].degenerate = out[1].degenerate = true;
    return out;
}

/// The mode at omega. When two modes share omega the even one is returned with `degenerate`
/// set; use mode_shapes() to get both.
inline ModeShape mode_shape(const SystemConfig& cfg, double omega) { return mode_shapes(cfg, omega).front(); }

/// Mode for a root produced by find_natural_frequencies (symmetry class already known).
inline ModeShape mode_shape(const SystemConfig& cfg, const NaturalFrequency& nf) {
    const CutoffFrequencies cut = cutoff_frequencies(cfg);
    if (!is_parity_eigenfrequency(cfg, cut, nf.omega, nf.parity))
        throw NotAnEigenfrequency("mode_shape: boundary matrix is not singular at omega");
    return detail::build_mode(cfg, cut, nf.omega, nf.parity);
}

/// Modes for a whole spectrum, marking coincident even/odd pairs.
inline std::vector<ModeShape> mode_shapes(const SystemConfig& cfg, const std::vector<NaturalFrequency>& roots) {
    const CutoffFrequencies cut = cutoff_frequencies(cfg);
    std::vector<ModeShape> out;
    out.reserve(roots.size());
    for (const auto& r : roots) out.push_back(detail::build_mode(cfg, cut, r.omega, r.parity));
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].omega == out[i + 1].omega) out[i].degenerate = out[i + 1].degenerate = true;
    return out;
}

}  // namespace tbw

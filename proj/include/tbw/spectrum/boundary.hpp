#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "tbw/spectrum/basis.hpp"

namespace tbw {

/// Free-free end-condition matrix. Rows are [moment(0), shear(0), moment(L), shear(L)];
/// columns are the even pair then the odd pair of the active basis. Each column has been
/// divided by a positive factor exp(log_scale[j]) so that its largest entry has magnitude 1.
struct BoundaryMatrix {
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    std::array<double, 4> log_scale{};
    SpectrumCase spectrum_case = SpectrumCase::Below1;
    BasisKind basis = BasisKind::Split;
    double K_M = 0.0;
    double K_T = 0.0;
};

/// 2x2 end-condition block of one parity class at z = L/2, columns normalized.
struct ParityMatrix {
    Eigen::Matrix2d A = Eigen::Matrix2d::Zero();
    std::array<double, 2> col_scale{}; ///< divisor applied to each column (basis scaling excluded)
};

namespace detail {

inline double column_log_base(const ParityBasis& b, int j) {
    if (b.kind() == BasisKind::Merged) return b.log_scale();
    if (b.kind() == BasisKind::Split && j == 0) return b.log_scale();
    return 0.0;
}

}  // namespace detail

inline ParityMatrix parity_matrix(const ParityBasis& b, Parity p) {
    ParityMatrix out;
    const double h = b.half_length();
    for (int j = 0; j < 2; ++j) {
        const EndRows r = b.end_rows(p, j, h);
        const double s = std::max(std::abs(r.moment), std::abs(r.shear));
        out.col_scale[j] = s > 0.0 ? s : 1.0;
        out.A(0, j) = r.moment / out.col_scale[j];
        out.A(1, j) = r.shear / out.col_scale[j];
    }
    return out;
}

/// Scaled 2x2 determinant of one parity class, evaluated with the continuous family
/// selection (no transition-point substitution). Its sign changes exactly at the roots of
/// that class, except for the removable jumps at w2 and w3 which the root scan never brackets.
inline double parity_determinant(const SystemConfig& cfg, const CutoffFrequencies& cut, double omega,
                                 Parity p) {
    const ParityBasis b = ParityBasis::at(cfg, cut, omega);
    return parity_matrix(b, p).A.determinant();
}

/// Basis to use at omega: the dedicated transition basis (evaluated at the cut-off itself)
/// when omega classifies as an At case, otherwise the continuous selection.
inline ParityBasis basis_for(const SystemConfig& cfg, const CutoffFrequencies& cut, double omega,
                             SpectrumCase sc) {
    switch (sc) {
        case SpectrumCase::At1: return ParityBasis::at(cfg, cut, cut.w1, sc);
        case SpectrumCase::At2: return ParityBasis::at(cfg, cut, cut.w2, sc);
        case SpectrumCase::At3: return ParityBasis::at(cfg, cut, cut.w3, sc);
        default: return ParityBasis::at(cfg, cut, omega);
    }
}

inline BoundaryMatrix boundary_matrix(const SystemConfig& cfg, double omega) {
    if (!(omega > 0.0)) throw InvalidInput("boundary_matrix: omega must be > 0");
    const CutoffFrequencies cut = cutoff_frequencies(cfg);
    BoundaryMatrix out;
    out.spectrum_case = classify(omega, cut);
    const ParityBasis b = basis_for(cfg, cut, omega, out.spectrum_case);
    out.basis = b.kind();
    out.K_M = b.K_M();
    out.K_T = b.K_T();
    const double h = b.half_length();
    int col = 0;
    for (Parity p : {Parity::Even, Parity::Odd}) {
        for (int j = 0; j < 2; ++j, ++col) {
            const EndRows left = b.end_rows(p, j, -h);
            const EndRows right = b.end_rows(p, j, h);
            Eigen::Vector4d v(left.moment, left.shear, right.moment, right.shear);
            const double s = v.cwiseAbs().maxCoeff();
            if (s > 0.0) v /= s;
            out.A.col(col) = v;
            out.log_scale[col] = detail::column_log_base(b, j) + (s > 0.0 ? std::log(s) : 0.0);
        }
    }
    return out;
}

inline double frequency_determinant(const SystemConfig& cfg, double omega) {
    return boundary_matrix(cfg, omega).A.determinant();
}

}  // namespace tbw

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/SVD>

#include "tbw/spectrum/boundary.hpp"

namespace tbw {

struct NaturalFrequency {
    double omega = 0.0;
    SpectrumCase spectrum_case = SpectrumCase::Below1;
    Parity parity = Parity::Even;
    int band = 1;
};

struct ScanOptions {
    double rel_tol = 1e-10;                          ///< required relative bracket width
    double max_phase_step = std::numbers::pi / 8.0;  ///< L * (change of any wavenumber) per step
    double max_rel_step = 0.02;                      ///< cap on step / omega
    double floor_ratio = 1e-4;                       ///< scan starts at floor_ratio * w1
    double transition_singular_tol = 1e-10;          ///< sigma_min / sigma_max at a cut-off
    double merge_rel = 1e-9;
};

/// Spatial wavenumbers that set the oscillation rate of the determinant in omega.
inline std::array<double, 2> wavenumbers(const SystemConfig& cfg, const CutoffFrequencies& cut, double omega) {
    const SpatialRoots r = spatial_roots(cfg, cut, omega);
    if (r.complex_pair) {
        const auto lam = std::sqrt(r.s_complex);
        return {std::abs(lam.real()), std::abs(lam.imag())};
    }
    return {std::sqrt(std::abs(r.s1)), std::sqrt(std::abs(r.s2))};
}

/// True when the dedicated transition basis at cut-off `sc` is singular for parity p.
inline bool transition_is_eigenfrequency(const SystemConfig& cfg, const CutoffFrequencies& cut, SpectrumCase sc,
                                         Parity p, double tol = 1e-10) {
    const double w = sc == SpectrumCase::At1 ? cut.w1 : sc == SpectrumCase::At2 ? cut.w2 : cut.w3;
    const ParityMatrix pm = parity_matrix(ParityBasis::at(cfg, cut, w, sc), p);
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(pm.A);
    const auto sv = svd.singularValues();
    if (sv(0) == 0.0) return true;
    return sv(1) <= tol * sv(0);
}

namespace detail {

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

class RootScanner {
public:
    RootScanner(const SystemConfig& cfg, const CutoffFrequencies& cut, const ScanOptions& opt)
        : cfg_(cfg), cut_(cut), opt_(opt) {}

    /// Roots of both parity determinants inside the open interval (a, b), which must not
    /// contain a cut-off.
    void scan_open(double a, double b, std::vector<NaturalFrequency>& out) const {
        const double L = cfg_.L;
        double x = a;
        auto kx = wavenumbers(cfg_, cut_, x);
        std::array<double, 2> dx = dets(x);
        double h = (b - a) / 16.0;
        while (x < b) {
            h = std::min({2.0 * h, b - x, opt_.max_rel_step * x});
            double y = x + h;
            auto ky = wavenumbers(cfg_, cut_, y);
            while (true) {
                const double phase = L * std::max(std::abs(ky[0] - kx[0]), std::abs(ky[1] - kx[1]));
                if (phase <= opt_.max_phase_step || h <= 1e-13 * x) break;
                h *= 0.5;
                y = x + h;
                ky = wavenumbers(cfg_, cut_, y);
            }
            const std::array<double, 2> dy = dets(y);
            for (int p = 0; p < 2; ++p) {
                const Parity par = p == 0 ? Parity::Even : Parity::Odd;
                if (dy[p] == 0.0 && y < b) {
                    out.push_back(make(y, par));
                } else if (sign_of(dx[p]) * sign_of(dy[p]) < 0) {
                    out.push_back(make(bisect(x, y, dx[p], par), par));
                } else if (!std::isfinite(dy[p])) {
                    throw NumericalFailure("root scan: non-finite determinant at omega=" + fmt(y));
                }
            }
            x = y;
            kx = ky;
            dx = dy;
        }
    }

    NaturalFrequency make(double w, Parity p) const {
        NaturalFrequency nf;
        nf.omega = w;
        nf.spectrum_case = classify(w, cut_);
        nf.parity = p;
        nf.band = band_of(w, cut_);
        return nf;
    }

private:
    std::array<double, 2> dets(double w) const {
        const ParityBasis b = ParityBasis::at(cfg_, cut_, w);
        return {parity_matrix(b, Parity::Even).A.determinant(), parity_matrix(b, Parity::Odd).A.determinant()};
    }

    double bisect(double lo, double hi, double flo, Parity p) const {
        const int slo = sign_of(flo);
        // Refined to full double precision: on long beams the determinant turns so fast near
        // the cut-offs that a 1e-10 bracket leaves visible end-condition residuals.
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) return mid;  // bracket is two adjacent doubles
            const double fm = parity_determinant(cfg_, cut_, mid, p);
            if (!std::isfinite(fm))
                throw NumericalFailure("root refinement: non-finite determinant in [" + fmt(lo) + ", " + fmt(hi) + "]");
            if (fm == 0.0) return mid;
            if (sign_of(fm) == slo) lo = mid;
            else hi = mid;
        }
        if (hi - lo > opt_.rel_tol * hi)
            throw NumericalFailure("root refinement did not converge in [" + fmt(lo) + ", " + fmt(hi) + "]");
        return 0.5 * (lo + hi);
    }

    static std::string fmt(double v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.15g", v);
        return buf;
    }

    const SystemConfig& cfg_;
    const CutoffFrequencies& cut_;
    const ScanOptions& opt_;
};

}  // namespace detail

/// Natural frequencies of the free-free beam in ascending order, each tagged with its
/// spectral case and symmetry class about midspan. Stops at omega_max (if > 0) and after
/// max_modes entries (if > 0); at least one of the two limits must be given.
///
/// Distinct modes of opposite parity may share a frequency to machine precision (end-localized
/// pairs on long beams); they are both returned, so the list is non-decreasing.
inline std::vector<NaturalFrequency> find_natural_frequencies(const SystemConfig& cfg, double omega_max,
                                                              int max_modes, const ScanOptions& opt = {}) {
    if (!(omega_max > 0.0) && max_modes < 1)
        throw InvalidInput("find_natural_frequencies: need omega_max > 0 or max_modes >= 1");
    const CutoffFrequencies cut = cutoff_frequencies(cfg);
    const detail::RootScanner scanner(cfg, cut, opt);
    const double eps = 1e-12;

    std::vector<NaturalFrequency> roots;
    std::vector<NaturalFrequency> inserted;

    // Scans (lo, hi], splitting at cut-offs and testing the cut-offs themselves.
    auto scan_range = [&](double lo, double hi) {
        std::vector<double> edges{lo};
        const std::array<std::pair<double, SpectrumCase>, 3> cuts{
            {{cut.w1, SpectrumCase::At1}, {cut.w2, SpectrumCase::At2}, {cut.w3, SpectrumCase::At3}}};
        for (const auto& [w, sc] : cuts) {
            if (w > lo && w <= hi) {
                edges.push_back(w);
                for (Parity p : {Parity::Even, Parity::Odd})
                    if (transition_is_eigenfrequency(cfg, cut, sc, p, opt.transition_singular_tol)) {
                        NaturalFrequency nf = scanner.make(w, p);
                        inserted.push_back(nf);
                    }
            }
        }
        edges.push_back(hi);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            const bool left_cut = edges[i] == cut.w1 || edges[i] == cut.w2 || edges[i] == cut.w3;
            const bool right_cut = edges[i + 1] == cut.w1 || edges[i + 1] == cut.w2 || edges[i + 1] == cut.w3;
            const double a = left_cut ? edges[i] * (1.0 + eps) : edges[i];
            const double b = right_cut ? edges[i + 1] * (1.0 - eps) : edges[i + 1];
            if (b > a) scanner.scan_open(a, b, roots);
        }
    };

    const double start = opt.floor_ratio * cut.w1;
    if (omega_max > 0.0) {
        scan_range(start, omega_max);
    } else {
        double lo = start, hi = 1.25 * cut.w2;
        while (true) {
            scan_range(lo, hi);
            if (static_cast<int>(roots.size() + inserted.size()) >= max_modes) break;
            if (hi > 1e3 * cut.w3)
                throw NumericalFailure("find_natural_frequencies: fewer than max_modes roots below 1000 w3");
            lo = hi;
            hi *= 1.5;
        }
    }

    for (const auto& t : inserted) {
        std::erase_if(roots, [&](const NaturalFrequency& r) {
            return r.parity == t.parity && std::abs(r.omega - t.omega) <= opt.merge_rel * t.omega;
        });
        roots.push_back(t);
    }
    std::sort(roots.begin(), roots.end(), [](const NaturalFrequency& a, const NaturalFrequency& b) {
        if (a.omega != b.omega) return a.omega < b.omega;
        return a.parity == Parity::Even && b.parity == Parity::Odd;
    });
    if (max_modes > 0 && static_cast<int>(roots.size()) > max_modes) roots.resize(max_modes);
    return roots;
}

struct BandCounts {
    int N1 = 0, N2 = 0, N3 = 0, N4 = 0;
};

inline BandCounts count_per_band(const std::vector<NaturalFrequency>& roots) {
    BandCounts c;
    for (const auto& r : roots) {
        switch (r.band) {
            case 1: ++c.N1; break;
            case 2: ++c.N2; break;
            case 3: ++c.N3; break;
            default: ++c.N4; break;
        }
    }
    return c;
}

/// Mode counts in (0,w1], (w1,w2], (w2,w3], (w3,omega_max].
inline BandCounts mode_count_per_band(const SystemConfig& cfg, double omega_max) {
    return count_per_band(find_natural_frequencies(cfg, omega_max, 0));
}

}  // namespace tbw

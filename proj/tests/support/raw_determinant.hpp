#pragma once

#include "tbw/model.hpp"

namespace tbw::test_support {

// Unscaled free-free determinant for omega between w2 and w3, built from
// exp(+-l1 x), cos(l2 x), sin(l2 x) with the origin at the left end.
template <class T>
T raw_determinant(const SystemConfig& cfg, T w) {
    using std::cos, std::exp, std::sin, std::sqrt;
    const T EJ = cfg.flexural_rigidity(), GA = cfg.shear_rigidity(), m = cfg.m_l, k = cfg.k_l();
    const T r2 = T(cfg.section.r) * T(cfg.section.r), L = cfg.L;
    const T e = T(cfg.section.E) / (T(cfg.section.kappa) * T(cfg.section.G));
    const T w2sq = k / m, w3sq = GA / (m * r2);
    const T A = EJ / m, B = r2 * (w * w * (1 + e) - w2sq * e), C = m * r2 / GA * (w * w - w2sq) * (w * w - w3sq);
    const T sq = sqrt(B * B - 4 * A * C);
    const T s1 = (-B + sq) / (2 * A), s2 = (-B - sq) / (2 * A);
    const T l1 = sqrt(s1), l2 = sqrt(-s2);
    const T KM = (m * w * w - k) / GA, KT = KM + m * r2 * w * w / EJ;
    T M[4][4];
    for (int end = 0; end < 2; ++end) {
        const T x = end ? L : T(0);
        const T ep = exp(l1 * x), em = exp(-l1 * x), c = cos(l2 * x), s = sin(l2 * x);
        T* mo = M[2 * end];
        T* sh = M[2 * end + 1];
        mo[0] = (l1 * l1 + KM) * ep;
        mo[1] = (l1 * l1 + KM) * em;
        mo[2] = (KM - l2 * l2) * c;
        mo[3] = (KM - l2 * l2) * s;
        sh[0] = (l1 * l1 * l1 + KT * l1) * ep;
        sh[1] = -(l1 * l1 * l1 + KT * l1) * em;
        sh[2] = (l2 * l2 * l2 - KT * l2) * s;
        sh[3] = (KT * l2 - l2 * l2 * l2) * c;
    }
    // Laplace expansion over the first two rows.
    T det = 0;
    const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int a = 0; a < 6; ++a) {
        const int i = pairs[a][0], j = pairs[a][1];
        int rest[2], n = 0;
        for (int c = 0; c < 4; ++c)
            if (c != i && c != j) rest[n++] = c;
        const T top = M[0][i] * M[1][j] - M[0][j] * M[1][i];
        const T bot = M[2][rest[0]] * M[3][rest[1]] - M[2][rest[1]] * M[3][rest[0]];
        const int sign = ((i + j + 1) % 2 == 0) ? 1 : -1;  // (-1)^(i+j+0+1) with 0-based columns
        det += sign * top * bot;
    }
    return det;
}

}  // namespace tbw::test_support

#pragma once

// Symmetric banded matrices in lower-band storage and an unpivoted LDL^T factorization
// used for Sturm counts and shifted solves.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "tbw/errors.hpp"

namespace tbw::fem {

/// Symmetric n x n matrix with half-bandwidth b; band(d, j) = A(j + d, j).
class SymBandMatrix {
public:
    SymBandMatrix() = default;
    SymBandMatrix(Eigen::Index n, Eigen::Index b) : n_(n), b_(b), band_(Eigen::MatrixXd::Zero(b + 1, n)) {}

    Eigen::Index size() const { return n_; }
    Eigen::Index bandwidth() const { return b_; }

    double operator()(Eigen::Index i, Eigen::Index j) const {
        if (i < j) std::swap(i, j);
        return (i - j > b_) ? 0.0 : band_(i - j, j);
    }
    /// Adds v to A(i, j) (and by symmetry A(j, i)).
    void add(Eigen::Index i, Eigen::Index j, double v) {
        if (i < j) std::swap(i, j);
        if (i - j > b_) throw InvalidInput("SymBandMatrix: entry outside the band");
        band_(i - j, j) += v;
    }

    Eigen::VectorXd multiply(const Eigen::VectorXd& x) const {
        Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
        for (Eigen::Index j = 0; j < n_; ++j) {
            y(j) += band_(0, j) * x(j);
            for (Eigen::Index d = 1; d <= b_ && j + d < n_; ++d) {
                y(j + d) += band_(d, j) * x(j);
                y(j) += band_(d, j) * x(j + d);
            }
        }
        return y;
    }

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n_, n_);
        for (Eigen::Index j = 0; j < n_; ++j)
            for (Eigen::Index d = 0; d <= b_ && j + d < n_; ++d) A(j + d, j) = A(j, j + d) = band_(d, j);
        return A;
    }

    /// this - sigma * other (same shape).
    SymBandMatrix shifted(const SymBandMatrix& other, double sigma) const {
        SymBandMatrix r = *this;
        r.band_ -= sigma * other.band_;
        return r;
    }

    const Eigen::MatrixXd& band() const { return band_; }

private:
    Eigen::Index n_ = 0, b_ = 0;
    Eigen::MatrixXd band_;
};

/// A = L D L^T without pivoting. Exactly zero pivots are replaced by a tiny multiple of the
/// matrix scale so the Sturm count stays defined.
class BandLDLT {
public:
    explicit BandLDLT(const SymBandMatrix& A) : n_(A.size()), b_(A.bandwidth()), L_(b_ + 1, n_), d_(n_) {
        const Eigen::MatrixXd& B = A.band();
        const double scale = std::max(B.row(0).cwiseAbs().maxCoeff(), 1e-300);
        L_.setZero();
        for (Eigen::Index j = 0; j < n_; ++j) {
            double dj = B(0, j);
            for (Eigen::Index k = std::max<Eigen::Index>(0, j - b_); k < j; ++k) {
                const double l = L_(j - k, k);
                dj -= l * l * d_(k);
            }
            if (dj == 0.0) dj = 1e-14 * scale;
            if (!std::isfinite(dj)) throw NumericalFailure("banded LDL^T: non-finite pivot");
            d_(j) = dj;
            for (Eigen::Index i = j + 1; i <= std::min(n_ - 1, j + b_); ++i) {
                double s = B(i - j, j);
                for (Eigen::Index k = std::max<Eigen::Index>(0, i - b_); k < j; ++k) s -= L_(i - k, k) * L_(j - k, k) * d_(k);
                L_(i - j, j) = s / dj;
            }
        }
    }

    /// Number of negative pivots (= eigenvalues of the pencil below the shift).
    Eigen::Index negative_count() const { return (d_.array() < 0.0).count(); }

    Eigen::VectorXd solve(Eigen::VectorXd x) const {
        for (Eigen::Index j = 0; j < n_; ++j)
            for (Eigen::Index i = j + 1; i <= std::min(n_ - 1, j + b_); ++i) x(i) -= L_(i - j, j) * x(j);
        x.array() /= d_.array();
        for (Eigen::Index j = n_ - 1; j >= 0; --j)
            for (Eigen::Index i = j + 1; i <= std::min(n_ - 1, j + b_); ++i) x(j) -= L_(i - j, j) * x(i);
        return x;
    }

    const Eigen::VectorXd& pivots() const { return d_; }

private:
    Eigen::Index n_, b_;
    Eigen::MatrixXd L_;
    Eigen::VectorXd d_;
};

}  // namespace tbw::fem

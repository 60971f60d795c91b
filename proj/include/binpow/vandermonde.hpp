#pragma once

// The change of basis between (1, x, ..., x^{k-1}) at x = 2^n and the block
// multipliers c_k(n), ..., c_k(n+k-1). Row i of M_k holds the powers of 2^i, so
//
//     [c_k(n+i)]_i = M_k [2^{jn}]_j,     M_k = V(1, 2, 4, ..., 2^{k-1}).
//
// Everything stays in exact integers: M_k^{-1} = adj(M_k) / d_k.

#include <cstdint>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>

#include "binpow/errors.hpp"
#include "binpow/integer.hpp"

namespace binpow {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// M_k with entries 2^{ij}.
template <typename Scalar = Integer>
MatrixX<Scalar> power_vandermonde(Eigen::Index k) {
    MatrixX<Scalar> m(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        Scalar node = Scalar(1);
        for (Eigen::Index s = 0; s < i; ++s) node *= Scalar(2);
        Scalar entry = Scalar(1);
        for (Eigen::Index j = 0; j < k; ++j) {
            m(i, j) = entry;
            entry *= node;
        }
    }
    return m;
}

/// prod_{0 <= i < j < k} (2^j - 2^i).
template <typename Scalar = Integer>
Scalar vandermonde_det_product(Eigen::Index k) {
    Scalar det = Scalar(1);
    Scalar pj = Scalar(1);
    for (Eigen::Index j = 0; j < k; ++j) {
        Scalar pi = Scalar(1);
        for (Eigen::Index i = 0; i < j; ++i) {
            det *= (pj - pi);
            pi *= Scalar(2);
        }
        pj *= Scalar(2);
    }
    return det;
}

/// Determinant and adjugate of a square integer matrix by fraction-free
/// Gauss-Jordan elimination on [A | I]. Every division is exact; the left block
/// ends as (+-det) I and the right block as (+-adj). Throws DomainError on a
/// singular matrix.
template <typename Scalar>
std::pair<Scalar, MatrixX<Scalar>> bareiss_adjugate(const MatrixX<Scalar>& a) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw DomainError("bareiss_adjugate: matrix must be square");
    MatrixX<Scalar> aug(n, 2 * n);
    aug.leftCols(n) = a;
    aug.rightCols(n).setZero();
    for (Eigen::Index i = 0; i < n; ++i) aug(i, n + i) = Scalar(1);

    Scalar prev = Scalar(1);
    bool negate = false;
    for (Eigen::Index p = 0; p < n; ++p) {
        if (aug(p, p) == Scalar(0)) {
            Eigen::Index swap_row = p + 1;
            while (swap_row < n && aug(swap_row, p) == Scalar(0)) ++swap_row;
            if (swap_row == n) throw DomainError("bareiss_adjugate: matrix is singular");
            aug.row(p).swap(aug.row(swap_row));
            negate = !negate;
        }
        const Scalar pivot = aug(p, p);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == p) continue;
            const Scalar factor = aug(i, p);
            for (Eigen::Index j = 0; j < 2 * n; ++j) {
                if (j == p) continue;
                aug(i, j) = (pivot * aug(i, j) - factor * aug(p, j)) / prev;
            }
            aug(i, p) = Scalar(0);
        }
        // Rows above p keep a_ii = prev going in, so the same update lifts
        // their diagonal to the new pivot.
        prev = pivot;
    }
    Scalar det = aug(n - 1, n - 1);
    MatrixX<Scalar> adj = aug.rightCols(n);
    if (negate) {
        det = -det;
        adj = -adj;
    }
    return {det, adj};
}

/// M_k with its adjugate and determinant d_k, all exact.
template <typename Scalar = Integer>
struct VanderSystem {
    Eigen::Index k = 0;
    MatrixX<Scalar> M;
    MatrixX<Scalar> adj;
    Scalar det;
    /// max |adj entry|; l_k = max_abs_adj / det.
    Scalar max_abs_adj;

    /// M * adj == det * I.
    bool inverse_identity_holds() const {
        const MatrixX<Scalar> prod = M * adj;
        return prod == MatrixX<Scalar>::Identity(k, k) * det;
    }
};

/// Builds M_k and checks the elimination determinant against the product formula.
template <typename Scalar = Integer>
VanderSystem<Scalar> build_vander(Eigen::Index k) {
    if (k < 1) throw DomainError("vander: k must be >= 1");
    VanderSystem<Scalar> sys;
    sys.k = k;
    sys.M = power_vandermonde<Scalar>(k);
    auto [det, adj] = bareiss_adjugate<Scalar>(sys.M);
    if (det != vandermonde_det_product<Scalar>(k))
        throw InternalBoundViolation("vander: elimination determinant disagrees with product formula");
    sys.det = std::move(det);
    sys.adj = std::move(adj);
    sys.max_abs_adj = Scalar(0);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            const Scalar v = sys.adj(i, j) < Scalar(0) ? Scalar(-sys.adj(i, j)) : sys.adj(i, j);
            if (v > sys.max_abs_adj) sys.max_abs_adj = v;
        }
    return sys;
}

/// u / d with a fixed shared denominator; never reduced.
template <typename Scalar = Integer>
struct RationalVector {
    RowVectorX<Scalar> numerators;
    Scalar denominator;
};

/// b = a M^{-1}, so that sum_i b_i c_k(n+i) = sum_i a_i 2^{in} for every n.
template <typename Scalar, typename Derived>
RationalVector<Scalar> solve_coeffs(const VanderSystem<Scalar>& sys,
                                    const Eigen::MatrixBase<Derived>& digits) {
    if (digits.size() != sys.k) throw DomainError("solve_coeffs: expected k digits");
    RowVectorX<Scalar> a(sys.k);
    for (Eigen::Index i = 0; i < sys.k; ++i) a(i) = digits(i);
    return {a * sys.adj, sys.det};
}

/// l_k as an exact fraction.
inline Rational ell(const VanderSystem<Integer>& sys) { return Rational(sys.max_abs_adj, sys.det); }

/// d_k < 2^{k^3/3}, checked as d_k^3 < 2^{k^3}.
inline bool det_bound_holds(const VanderSystem<Integer>& sys) {
    const auto k = static_cast<std::uint64_t>(sys.k);
    return sys.det > 0 && sys.det * sys.det * sys.det < pow2(k * k * k);
}

/// l_k < 34.
inline bool ell_bound_holds(const VanderSystem<Integer>& sys) { return sys.max_abs_adj < sys.det * 34; }

}  // namespace binpow

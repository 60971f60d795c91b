#include "doctest.h"

#include <random>

#include "binpow/errors.hpp"
#include "binpow/repr_core.hpp"
#include "binpow/vandermonde.hpp"

using namespace binpow;

namespace {

// Laplace expansion along the first row; exponential, used only for k <= 6.
Integer cofactor_det(const MatrixX<Integer>& m) {
    const Eigen::Index k = m.rows();
    if (k == 1) return m(0, 0);
    Integer det = 0;
    for (Eigen::Index j = 0; j < k; ++j) {
        MatrixX<Integer> minor(k - 1, k - 1);
        for (Eigen::Index r = 1; r < k; ++r)
            for (Eigen::Index c = 0, cc = 0; c < k; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        const Integer term = m(0, j) * cofactor_det(minor);
        det += (j % 2 == 0) ? term : Integer(-term);
    }
    return det;
}

MatrixX<Integer> cofactor_adjugate(const MatrixX<Integer>& m) {
    const Eigen::Index k = m.rows();
    MatrixX<Integer> adj(k, k);
    if (k == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            MatrixX<Integer> minor(k - 1, k - 1);
            for (Eigen::Index r = 0, rr = 0; r < k; ++r) {
                if (r == i) continue;
                for (Eigen::Index c = 0, cc = 0; c < k; ++c)
                    if (c != j) minor(rr, cc++) = m(r, c);
                ++rr;
            }
            const Integer d = cofactor_det(minor);
            adj(j, i) = ((i + j) % 2 == 0) ? d : Integer(-d);
        }
    return adj;
}

}  // namespace

TEST_CASE("matrix rows are powers of 2^i") {
    const auto sys = build_vander<Integer>(4);
    CHECK(sys.M(3, 0) == 1);
    CHECK(sys.M(3, 1) == 8);
    CHECK(sys.M(3, 2) == 64);
    CHECK(sys.M(3, 3) == 512);
    CHECK(build_vander<Integer>(2).det == 1);
    CHECK(sys.det == 1008);
    CHECK(sys.det == Integer(1 * 3 * 7 * 2 * 6 * 4));
    CHECK(build_vander<Integer>(3).det == 6);
    CHECK(build_vander<Integer>(5).det == 20321280);
}

TEST_CASE("elimination agrees with cofactor expansion") {
    for (Eigen::Index k = 1; k <= 6; ++k) {
        CAPTURE(k);
        const auto sys = build_vander<Integer>(k);
        CHECK(sys.det == cofactor_det(sys.M));
        CHECK(sys.adj == cofactor_adjugate(sys.M));
    }
}

TEST_CASE("elimination handles pivoting on generic matrices") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 300; ++t) {
        const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng() % 5);
        MatrixX<Integer> m(k, k);
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) m(i, j) = Integer(static_cast<long long>(rng() % 7) - 3);
        if (cofactor_det(m) == 0) {
            CHECK_THROWS_AS(bareiss_adjugate<Integer>(m), DomainError);
            continue;
        }
        const auto [det, adj] = bareiss_adjugate<Integer>(m);
        CHECK(det == cofactor_det(m));
        CHECK(adj == cofactor_adjugate(m));
    }
}

TEST_CASE("exact ell_k values") {
    const Rational expected[] = {Rational(1), Rational(2), Rational(8, 3), Rational(11, 3), Rational(92, 21),
                                 Rational(1504, 315)};
    for (Eigen::Index k = 1; k <= 6; ++k) CHECK(ell(build_vander<Integer>(k)) == expected[k - 1]);
}

TEST_CASE("bounds for k <= 12") {
    Rational worst = 0;
    for (Eigen::Index k = 1; k <= 12; ++k) {
        CAPTURE(k);
        const auto sys = build_vander<Integer>(k);
        CHECK(sys.inverse_identity_holds());
        CHECK(det_bound_holds(sys));
        CHECK(ell_bound_holds(sys));
        CHECK(sys.det == vandermonde_det_product<Integer>(k));
        if (ell(sys) > worst) worst = ell(sys);
    }
    // Observational: the running maximum stays under 5.195.
    MESSAGE("max ell_k for k <= 12: " << to_decimal_string(worst, 9));
    CHECK(worst < Rational(5195, 1000));
}

TEST_CASE("solve_coeffs examples") {
    for (Eigen::Index k = 1; k <= 7; ++k) {
        const auto sys = build_vander<Integer>(k);
        for (Eigen::Index i = 0; i < k; ++i) {
            const auto b = solve_coeffs(sys, sys.M.row(i));
            for (Eigen::Index j = 0; j < k; ++j) CHECK(b.numerators(j) == (i == j ? sys.det : Integer(0)));
            CHECK(b.denominator == sys.det);
        }
        const RowVectorX<Integer> sums = RowVectorX<Integer>::Ones(k) * sys.M;
        const auto ones = solve_coeffs(sys, sums);
        for (Eigen::Index j = 0; j < k; ++j) CHECK(ones.numerators(j) == sys.det);
    }
}

TEST_CASE("solve_coeffs substitutes back exactly") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 400; ++t) {
        const auto k = static_cast<Eigen::Index>(1 + rng() % 6);
        const std::uint64_t n = 1 + rng() % 40;
        const auto sys = build_vander<Integer>(k);
        RowVectorX<Integer> a(k);
        Integer amax = 0;
        for (Eigen::Index i = 0; i < k; ++i) {
            a(i) = Integer(rng()) % pow2(n);
            if (a(i) > amax) amax = a(i);
        }
        const auto b = solve_coeffs(sys, a);
        Rational lhs = 0;
        Integer rhs = 0;
        for (Eigen::Index i = 0; i < k; ++i) {
            lhs += Rational(b.numerators(i), b.denominator) * Rational(c_k(static_cast<std::uint64_t>(k), n + i));
            rhs += a(i) * pow2(static_cast<std::uint64_t>(i) * n);
            // |b_i| <= k l_k max a
            const Integer mag = b.numerators(i) < 0 ? Integer(-b.numerators(i)) : b.numerators(i);
            CHECK(mag <= Integer(k) * sys.max_abs_adj * amax);
        }
        CHECK(lhs == Rational(rhs));
    }
}

TEST_CASE("floating scalars instantiate") {
    const auto sys = build_vander<double>(4);
    CHECK(sys.det == doctest::Approx(1008.0));
}

#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "binpow/decomposer.hpp"
#include "binpow/errors.hpp"
#include "binpow/frobenius.hpp"
#include "binpow/gcd_theory.hpp"

using namespace binpow;

TEST_CASE("Frobenius numbers for k = 2..6") {
    CHECK(frobenius_number(2) == 17);
    CHECK(frobenius_number(3) == 723);
    CHECK(frobenius_number(4) == 52753);
    CHECK(frobenius_number(5) == 49790415);
    CHECK(frobenius_number(6) == 126629);
    CHECK_THROWS_AS(frobenius_number(7), ResourceError);
    CHECK_THROWS_AS(frobenius_number(1), DomainError);
}

TEST_CASE("two-generator formula") {
    CHECK(two_generator_frobenius(3, 5) == 7);
    CHECK(two_generator_frobenius(2, 3) == 1);
    CHECK(two_generator_frobenius(3, 10) == 17);
    CHECK_THROWS_AS(two_generator_frobenius(4, 6), DomainError);

    // Brute force on small coprime pairs.
    for (int a = 2; a <= 12; ++a)
        for (int b = a + 1; b <= 15; ++b) {
            if (std::gcd(a, b) != 1) continue;
            std::vector<bool> reach(a * b + 1, false);
            reach[0] = true;
            int largest_gap = -1;
            for (int x = 1; x <= a * b; ++x) {
                reach[x] = (x >= a && reach[x - a]) || (x >= b && reach[x - b]);
                if (!reach[x]) largest_gap = x;
            }
            CHECK(two_generator_frobenius(a, b) == largest_gap);
        }
}

TEST_CASE("chain of upper bounds") {
    for (std::uint64_t k = 2; k <= 6; ++k) {
        CAPTURE(k);
        CHECK(frobenius_number(k) <= two_generator_bound(k));
        CHECK(two_generator_bound(k) <= pow2(k * k + k));
    }
    CHECK(two_generator_bound(2) == 17);
}

TEST_CASE("table agrees with the DP on non-representable values") {
    for (std::uint64_t k = 2; k <= 3; ++k) {
        const SemigroupTable& table = cached_semigroup_table(k);
        const std::uint64_t F = table.frobenius().convert_to<std::uint64_t>();
        const RepresentationTable dp(k, F + 1000);
        for (std::uint64_t v = 0; v <= F + 1000; ++v) {
            CAPTURE(v);
            REQUIRE(table.representable(v) == (dp.min_count(v) != RepresentationTable::kUnreachable));
        }
    }
}

TEST_CASE("scaled table for k = 6 uses E_6 = 3") {
    const SemigroupTable& table = cached_semigroup_table(6);
    CHECK(table.gcd() == 3);
    CHECK(table.modulus() == 21);
    CHECK_FALSE(table.representable(3 * table.frobenius()));
    CHECK(table.representable(3 * (table.frobenius() + 1)));
    CHECK_FALSE(table.representable(3 * (table.frobenius() + 1) + 1));
}

TEST_CASE("stabilization under doubled cutoff") {
    for (std::uint64_t k = 2; k <= 6; ++k) CHECK(stabilization_holds(cached_semigroup_table(k)));
}

TEST_CASE("walk back reproduces minimal values") {
    for (std::uint64_t k = 2; k <= 6; ++k) {
        const SemigroupTable& table = cached_semigroup_table(k);
        for (std::uint64_t r = 0; r < table.modulus(); ++r) {
            Integer sum = 0;
            for (const Integer& g : table.walk_back(r)) sum += g;
            CHECK(sum == table.minimal(r));
        }
    }
}

TEST_CASE("represent") {
    const SemigroupTable& two = cached_semigroup_table(2);
    CHECK_THROWS_AS(represent(17, two), NotRepresentable);
    const auto eighteen = represent(18, two);
    CHECK(eighteen.count() == 2);
    CHECK(eighteen.total() == 18);
    std::vector<Integer> values;
    for (const auto& t : eighteen.terms()) values.push_back(t.power.value());
    std::sort(values.begin(), values.end());
    CHECK((values == std::vector<Integer>{3, 15}));

    const SemigroupTable& six = cached_semigroup_table(6);
    const Integer v = 3 * (six.frobenius() + 1);
    const auto pm = represent(v, six);
    CHECK(verify_decomposition(v, 6, pm).ok);
    CHECK_THROWS_AS(represent(v + 1, six), NotMultipleOfGcd);

    for (std::uint64_t k = 2; k <= 5; ++k) {
        const SemigroupTable& table = cached_semigroup_table(k);
        for (Integer x = table.frobenius() + 1; x < table.frobenius() + 400; ++x)
            CHECK(verify_decomposition(x, k, represent(x, table)).ok);
        const Integer big = pow2(200) + 12345;
        CHECK(verify_decomposition(big, k, represent(big, table)).ok);
    }
}

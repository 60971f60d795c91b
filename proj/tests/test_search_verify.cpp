#include "doctest.h"

#include <set>

#include "binpow/decomposer.hpp"
#include "binpow/errors.hpp"
#include "binpow/repr_core.hpp"
#include "binpow/search_verify.hpp"

using namespace binpow;

TEST_CASE("census of {0}") {
    const auto c = census(3, 9, 0);
    CHECK(c.exception_count == 0);
    CHECK_FALSE(c.max_exception);
}

TEST_CASE("cube census up to 2^20 reproduces the known exception list") {
    CensusConfig config;
    config.workers = 3;
    const auto c = census(3, 9, std::uint64_t{1} << 20, config);
    CHECK(c.exception_count == 4921);
    CHECK(c.max_exception == 147615);
    CHECK(c.exceptions.size() == 4921);
    CHECK(c.exceptions.front() == 1);
}

TEST_CASE("census agrees with the DP table") {
    for (std::uint64_t k : {2, 3}) {
        for (unsigned cap : {4u, 9u}) {
            CAPTURE(k);
            CAPTURE(cap);
            constexpr std::uint64_t limit = 100'000;
            const RepresentationTable table(k, limit);
            std::uint64_t expected = 0;
            for (std::uint64_t x = 0; x <= limit; ++x)
                if (table.min_count(x) > cap) ++expected;
            const auto c = census(k, cap, limit);
            CHECK(c.exception_count == expected);
            for (std::uint64_t e : c.exceptions) CHECK(table.min_count(e) > cap);
        }
    }
}

TEST_CASE("k = 2, cap 4 up to 10^6 matches the DP count") {
    constexpr std::uint64_t limit = 1'000'000;
    const RepresentationTable table(2, limit);
    std::uint64_t expected = 0;
    for (std::uint64_t x = 0; x <= limit; ++x)
        if (table.min_count(x) > 4) ++expected;
    const auto c = census(2, 4, limit);
    CHECK(c.exception_count == expected);
    CHECK(c.max_exception == 686);
}

TEST_CASE("layers are monotone and worker count does not matter") {
    CensusConfig one, many;
    one.workers = 1;
    many.workers = 5;
    const auto a = census(3, 6, 200'003, one);
    const auto b = census(3, 6, 200'003, many);
    CHECK(a.exceptions == b.exceptions);
    CHECK(a.layer_sizes == b.layer_sizes);
    for (std::size_t t = 1; t < a.layer_sizes.size(); ++t) CHECK(a.layer_sizes[t - 1] <= a.layer_sizes[t]);
    CHECK(a.layer_sizes.front() == 1);
}

TEST_CASE("census respects the memory budget") {
    CensusConfig tight;
    tight.memory_budget = 1024;
    CHECK_THROWS_AS(census(3, 9, 1'000'000, tight), ResourceError);
}

TEST_CASE("sumset uniqueness examples") {
    for (std::uint64_t n = 1; n <= 12; ++n) CHECK(sumset_unique(1, n).unique());
    const auto two = sumset_unique(2, 3);
    CHECK(two.observed == 32);
    CHECK(two.unique());
    const auto three = sumset_unique(3, 4);
    CHECK(three.observed == 4096);  // 2^3 * 2^4 * 2^5
    CHECK(three.unique());
    CHECK_THROWS_AS(sumset_unique(3, 10, 1 << 10), ResourceError);
}

TEST_CASE("sumset agrees with a set-based count") {
    for (std::uint64_t k = 1; k <= 3; ++k)
        for (std::uint64_t n = 1; n + k <= 7; ++n) {
            std::set<Integer> sums{Integer(0)};
            for (std::uint64_t i = 0; i < k; ++i) {
                std::set<Integer> grown;
                for (const Integer& s : sums)
                    for (Integer a = pow2(n + i - 1); a < pow2(n + i); ++a) grown.insert(s + a * c_k(k, n + i));
                sums = std::move(grown);
            }
            CHECK(Integer(sumset_unique(k, n).observed) == Integer(sums.size()));
        }
}

#include "doctest.h"

#include <array>
#include <random>
#include <string>
#include <vector>

#include "binpow/errors.hpp"
#include "binpow/repr_core.hpp"

using namespace binpow;

namespace {

// Independent membership oracle: the base-b digit string splits into k equal
// blocks with a nonzero leading digit.
bool digits_oracle(std::uint64_t x, std::uint64_t k, std::uint64_t b) {
    if (x == 0) return true;
    std::vector<std::uint64_t> digits;
    for (; x; x /= b) digits.push_back(x % b);
    if (digits.size() % k) return false;
    const std::size_t n = digits.size() / k;
    for (std::size_t i = n; i < digits.size(); ++i)
        if (digits[i] != digits[i - n]) return false;
    return true;
}

}  // namespace

TEST_CASE("block multipliers") {
    CHECK(c_kb(2, 3, 4) == 273);
    CHECK(13 * c_kb(2, 3, 4) == 3549);
    for (std::uint64_t n = 1; n <= 50; ++n) CHECK(c_kb(2, 1, n) == 1);
    CHECK(c_kb(2, 2, 5) == 33);
    CHECK(16 * c_kb(2, 2, 5) == 528);
    CHECK(c_kb(10, 3, 2) == 10101);
    CHECK_THROWS_AS(c_kb(1, 2, 2), DomainError);
}

TEST_CASE("recognize known values") {
    const auto p = recognize(3549, 3);
    REQUIRE(p);
    CHECK((*p == BlockPower{2, 3, 4, 13}));

    for (std::uint64_t k = 2; k <= 8; ++k) CHECK_FALSE(recognize(1, k));
    CHECK(recognize(1, 1));

    const auto q = recognize(45, 2);
    REQUIRE(q);
    CHECK((*q == BlockPower{2, 2, 3, 5}));

    CHECK_FALSE(recognize(0, 2));
    CHECK(is_member(0, 2));
    CHECK_FALSE(is_member(46, 2));
    CHECK((recognize(Integer(123123), 2, 10) == BlockPower{10, 2, 3, 123}));
    CHECK_FALSE(recognize(Integer(120120 + 1), 2, 10));
}

TEST_CASE("enumerate small ranges") {
    auto as_u64 = [](const PowerSetView& v) {
        std::vector<std::uint64_t> out;
        for (const Integer& s : v) out.push_back(s.convert_to<std::uint64_t>());
        return out;
    };
    CHECK((as_u64(enumerate(2, 2, 63)) == std::vector<std::uint64_t>{0, 3, 10, 15, 36, 45, 54, 63}));
    CHECK((as_u64(enumerate(2, 3, 511)) == std::vector<std::uint64_t>{0, 7, 42, 63, 292, 365, 438, 511}));
    for (std::uint64_t k = 1; k <= 10; ++k)
        CHECK((as_u64(enumerate(2, k, c_k(k, 1) - 1)) == std::vector<std::uint64_t>{0}));
    CHECK(enumerate(2, 2, 63).to_vector().size() == 8);
}

TEST_CASE("enumerate agrees with a digit-string filter up to 10^6") {
    constexpr std::uint64_t limit = 1'000'000;
    for (std::uint64_t b : {2, 3, 10}) {
        for (std::uint64_t k = 1; k <= 4; ++k) {
            std::vector<std::uint64_t> oracle;
            for (std::uint64_t x = 0; x <= limit; ++x)
                if (digits_oracle(x, k, b)) oracle.push_back(x);
            std::vector<std::uint64_t> seen;
            for (const Integer& s : enumerate(b, k, limit)) seen.push_back(s.convert_to<std::uint64_t>());
            CAPTURE(b);
            CAPTURE(k);
            CHECK(seen == oracle);
        }
    }
}

TEST_CASE("recognize agrees with the digit-string filter") {
    for (std::uint64_t b : {2, 3, 10})
        for (std::uint64_t k = 1; k <= 4; ++k)
            for (std::uint64_t x = 0; x <= 30'000; ++x) {
                CAPTURE(x);
                CHECK(is_member(x, k, b) == digits_oracle(x, k, b));
            }
}

TEST_CASE("recognize inverts value on random blocks") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 3000; ++t) {
        const std::uint64_t b = std::array<std::uint64_t, 4>{2, 3, 7, 10}[rng() % 4];
        const std::uint64_t k = 1 + rng() % 7;
        const std::uint64_t n = 1 + rng() % 30;
        const Integer lo = pow_int(Integer(b), n - 1);
        const Integer span = lo * (b - 1);
        const Integer a = lo + Integer(rng()) % span;
        const BlockPower p{b, k, n, a};
        REQUIRE(p.well_formed());
        const auto back = recognize(p.value(), k, b);
        REQUIRE(back);
        CHECK(*back == p);
        if (k >= 2) CHECK_FALSE(recognize(p.value() + 1, k, b) == p);
    }
}

TEST_CASE("count of positive binary powers up to 2^{kn} is 2^n - 1") {
    for (std::uint64_t k = 1; k <= 5; ++k)
        for (std::uint64_t n = 1; n <= 12; ++n) {
            std::uint64_t below = 0, upto = 0;
            for (const Integer& s : enumerate(2, k, pow2(k * n))) {
                if (s > 0) ++upto;
                if (s > 0 && s < pow2(k * n)) ++below;
            }
            CHECK((below == (std::uint64_t{1} << n) - 1));
            // For k = 1 the bound 2^n is itself the first 1-power with n + 1 digits.
            CHECK((upto == below + (k == 1 ? 1 : 0)));
        }
}

TEST_CASE("floor_member is the largest member not above the bound") {
    for (std::uint64_t k = 1; k <= 4; ++k) {
        std::uint64_t best = 0;
        for (std::uint64_t x = 0; x <= 70'000; ++x) {
            if (digits_oracle(x, k, 2)) best = x;
            CAPTURE(x);
            REQUIRE(floor_member(x, k) == best);
        }
    }
    // Largest cube below 2^60 has 20-bit blocks of ones.
    CHECK(floor_member(pow2(60), 3) == pow2(60) - 1);
    CHECK(floor_member(pow2(60) - 2, 3) == (pow2(20) - 2) * c_k(3, 20));
}

TEST_CASE("binary_powers_u64 lists positive members") {
    const auto squares = binary_powers_u64(2, 63);
    CHECK((squares == std::vector<std::uint64_t>{3, 10, 15, 36, 45, 54, 63}));
    CHECK(binary_powers_u64(3, 6).empty());
}

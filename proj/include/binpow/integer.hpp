#pragma once

// Exact integer and rational scalars shared by every module.

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace binpow {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

inline Integer pow_int(const Integer& base, std::uint64_t exp) {
    return boost::multiprecision::pow(base, static_cast<unsigned>(exp));
}

inline Integer pow2(std::uint64_t exp) { return Integer(1) << static_cast<unsigned>(exp); }

/// Number of bits in the canonical binary expansion; 0 for 0.
inline std::uint64_t bit_length(const Integer& x) {
    return x.is_zero() ? 0 : boost::multiprecision::msb(x) + 1;
}

/// Number of base-b digits in the canonical expansion; 0 for 0.
std::uint64_t digit_count(const Integer& x, std::uint64_t base);

/// Floor division that rounds toward negative infinity for any sign of the numerator.
inline Integer floor_div(const Integer& num, const Integer& den) {
    Integer q = num / den;
    Integer r = num - q * den;
    if (!r.is_zero() && ((r < 0) != (den < 0))) --q;
    return q;
}

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

inline std::string to_string(const Integer& x) { return x.str(); }

/// Parses a non-negative decimal string; throws DomainError on anything else.
Integer parse_natural(std::string_view text);

/// Fits in a uint64_t, or throws DomainError naming `what`.
std::uint64_t to_u64(const Integer& x, std::string_view what);

std::string to_decimal_string(const Rational& q, int digits = 12);

}  // namespace binpow

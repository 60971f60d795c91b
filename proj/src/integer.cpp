#include "binpow/integer.hpp"

#include <bit>
#include <limits>

#include "binpow/errors.hpp"

namespace binpow {

std::uint64_t digit_count(const Integer& x, std::uint64_t base) {
    if (base < 2) throw DomainError("digit_count: base must be >= 2");
    if (x.is_zero()) return 0;
    if ((base & (base - 1)) == 0) {
        const auto bits_per_digit = static_cast<std::uint64_t>(std::countr_zero(base));
        return (bit_length(x) + bits_per_digit - 1) / bits_per_digit;
    }
    std::uint64_t count = 0;
    Integer power = 1;
    while (power <= x) {
        power *= base;
        ++count;
    }
    return count;
}

Integer parse_natural(std::string_view text) {
    if (text.empty()) throw DomainError("expected a non-negative integer, got an empty string");
    for (char ch : text) {
        if (ch < '0' || ch > '9')
            throw DomainError("expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return Integer(std::string(text));
}

std::uint64_t to_u64(const Integer& x, std::string_view what) {
    if (x < 0 || x > std::numeric_limits<std::uint64_t>::max())
        throw DomainError(std::string(what) + " does not fit in 64 bits: " + x.str());
    return x.convert_to<std::uint64_t>();
}

std::string to_decimal_string(const Rational& q, int digits) {
    Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    std::string out;
    if (num < 0) {
        out += '-';
        num = -num;
    }
    const Integer whole = num / den;
    Integer rem = num % den;
    out += whole.str();
    if (digits > 0) {
        out += '.';
        for (int i = 0; i < digits; ++i) {
            rem *= 10;
            out += static_cast<char>('0' + (rem / den).convert_to<int>());
            rem %= den;
        }
    }
    return out;
}

}  // namespace binpow

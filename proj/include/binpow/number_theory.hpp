#pragma once

// Small-integer helpers: factorization, Carmichael lambda, multiplicative order, Moebius.

#include <cstdint>
#include <utility>
#include <vector>

namespace binpow {

using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

/// Trial division; fine for the moduli that arise here (products of small factors).
Factorization factorize(std::uint64_t x);

/// Carmichael's lambda(x), the exponent of (Z/xZ)^*.
std::uint64_t carmichael_lambda(std::uint64_t x);

/// Least m >= 1 with base^m = 1 (mod x). Throws DomainError unless gcd(base, x) = 1.
std::uint64_t multiplicative_order(std::uint64_t base, std::uint64_t x);

/// Moebius function values mu(0..limit); mu(0) is stored as 0.
std::vector<int> mobius_table(std::uint64_t limit);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace binpow

#pragma once

// gcd structure of S_k^b: five routes to the same number E_k.

#include <cstdint>
#include <optional>
#include <string>

#include "binpow/integer.hpp"

namespace binpow {

/// E_k = gcd((b^k - 1)/(b - 1), k). For b = 2 this is gcd(2^k - 1, k).
std::uint64_t gcd_of_powers(std::uint64_t base, std::uint64_t k);

/// The five gcds A_k..E_k computed independently.
///
/// A is the gcd of every element of S_k^b with block length <= depth,
/// B the gcd of c(1..depth), C the gcd of c(1..k), D = gcd(c(1), c(k)),
/// and E the closed form.
struct GcdChain {
    std::uint64_t base = 2;
    std::uint64_t k = 1;
    std::uint64_t depth = 1;
    Integer A, B, C, D, E;
    /// Set when two members differ; names the first disagreeing pair.
    std::optional<std::string> counterexample;

    bool holds() const { return !counterexample.has_value(); }
};

/// Computes the chain at the given sample depth (defaults to 2k when 0).
/// Never throws on disagreement; inspect `counterexample`.
GcdChain verify_gcd_chain(std::uint64_t base, std::uint64_t k, std::uint64_t depth = 0);

/// p-adic valuation of n > 0. Throws DomainError if p is not prime or n == 0.
std::uint64_t nu_p(std::uint64_t p, const Integer& n);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

}  // namespace binpow

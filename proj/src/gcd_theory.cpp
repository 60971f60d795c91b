#include "binpow/gcd_theory.hpp"

#include <array>

#include "binpow/errors.hpp"
#include "binpow/repr_core.hpp"

namespace binpow {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    if (m == 1) return 0;
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // The first twelve primes as witnesses are deterministic for all 64-bit n.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t gcd_of_powers(std::uint64_t base, std::uint64_t k) {
    if (base < 2 || k == 0) throw DomainError("E_k: need base >= 2 and k >= 1");
    return gcd(c_kb(base, k, 1), Integer(k)).convert_to<std::uint64_t>();
}

GcdChain verify_gcd_chain(std::uint64_t base, std::uint64_t k, std::uint64_t depth) {
    if (base < 2 || k == 0) throw DomainError("gcd chain: need base >= 2 and k >= 1");
    if (depth == 0) depth = 2 * k;
    if (depth < k) throw DomainError("gcd chain: sample depth must be >= k");

    GcdChain chain;
    chain.base = base;
    chain.k = k;
    chain.depth = depth;

    // The elements of block length n are a*c(n) for a in [b^{n-1}, b^n); the gcd
    // of a run of consecutive integers is 1 unless the run has a single member.
    Integer A = 0;
    Integer B = 0;
    for (std::uint64_t n = 1; n <= depth; ++n) {
        const Integer c = c_kb(base, k, n);
        const Integer low = pow_int(Integer(base), n - 1);
        const Integer high = low * base - 1;
        const Integer block_gcd = (high > low) ? Integer(1) : low;
        A = gcd(A, block_gcd * c);
        B = gcd(B, c);
    }
    Integer C = 0;
    for (std::uint64_t n = 1; n <= k; ++n) C = gcd(C, c_kb(base, k, n));

    chain.A = A;
    chain.B = B;
    chain.C = C;
    chain.D = gcd(c_kb(base, k, 1), c_kb(base, k, k));
    chain.E = Integer(gcd_of_powers(base, k));

    const std::array<std::pair<const char*, const Integer*>, 5> members{{
        {"A", &chain.A}, {"B", &chain.B}, {"C", &chain.C}, {"D", &chain.D}, {"E", &chain.E}}};
    for (const auto& [name, value] : members) {
        if (*value != chain.E) {
            chain.counterexample = std::string(name) + "=" + value->str() + " != E=" + chain.E.str() +
                                   " (b=" + std::to_string(base) + ", k=" + std::to_string(k) +
                                   ", depth=" + std::to_string(depth) + ")";
            break;
        }
    }
    return chain;
}

std::uint64_t nu_p(std::uint64_t p, const Integer& n) {
    if (!is_prime_u64(p)) throw DomainError("nu_p: " + std::to_string(p) + " is not prime");
    if (n <= 0) throw DomainError("nu_p: n must be positive");
    std::uint64_t e = 0;
    Integer x = n;
    Integer q;
    Integer r;
    for (;;) {
        boost::multiprecision::divide_qr(x, Integer(p), q, r);
        if (!r.is_zero()) break;
        x = q;
        ++e;
    }
    return e;
}

}  // namespace binpow

#include "binpow/number_theory.hpp"

#include <numeric>
#include <string>

#include "binpow/errors.hpp"
#include "binpow/gcd_theory.hpp"

namespace binpow {

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 l = static_cast<unsigned __int128>(a / std::gcd(a, b)) * b;
    if (l > UINT64_MAX) throw DomainError("lcm overflows 64 bits");
    return static_cast<std::uint64_t>(l);
}

Factorization factorize(std::uint64_t x) {
    Factorization out;
    if (x < 2) return out;
    auto take = [&](std::uint64_t p) {
        unsigned e = 0;
        while (x % p == 0) {
            x /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    take(2);
    take(3);
    for (std::uint64_t p = 5; p * p <= x; p += 6) {
        take(p);
        take(p + 2);
    }
    if (x > 1) out.emplace_back(x, 1);
    return out;
}

std::uint64_t carmichael_lambda(std::uint64_t x) {
    if (x == 0) throw DomainError("carmichael_lambda: x must be positive");
    std::uint64_t lambda = 1;
    for (auto [p, e] : factorize(x)) {
        std::uint64_t part;
        if (p == 2) {
            part = e == 1 ? 1 : e == 2 ? 2 : (std::uint64_t{1} << (e - 2));
        } else {
            part = p - 1;
            for (unsigned i = 1; i < e; ++i) part *= p;
        }
        lambda = lcm_u64(lambda, part);
    }
    return lambda;
}

std::uint64_t multiplicative_order(std::uint64_t base, std::uint64_t x) {
    if (x == 0) throw DomainError("multiplicative_order: modulus must be positive");
    if (std::gcd(base, x) != 1)
        throw DomainError("multiplicative_order: gcd(" + std::to_string(base) + ", " + std::to_string(x) +
                          ") != 1");
    if (x == 1) return 1;
    std::uint64_t order = carmichael_lambda(x);
    for (auto [p, e] : factorize(order)) {
        for (unsigned i = 0; i < e; ++i) {
            if (powmod_u64(base, order / p, x) != 1) break;
            order /= p;
        }
    }
    return order;
}

std::vector<int> mobius_table(std::uint64_t limit) {
    std::vector<int> mu(limit + 1, 1);
    std::vector<bool> composite(limit + 1, false);
    mu[0] = 0;
    for (std::uint64_t p = 2; p <= limit; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t m = p; m <= limit; m += p) {
            if (m > p) composite[m] = true;
            mu[m] = -mu[m];
        }
        if (p <= limit / p) {
            for (std::uint64_t m = p * p; m <= limit; m += p * p) mu[m] = 0;
        }
    }
    return mu;
}

}  // namespace binpow

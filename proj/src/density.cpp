#include "binpow/density.hpp"

#include <algorithm>
#include <thread>

#include "binpow/errors.hpp"
#include "binpow/gcd_theory.hpp"
#include "binpow/number_theory.hpp"

namespace binpow {

OrderCache::OrderCache(std::uint64_t base) : base_(base) {
    if (base < 2) throw DomainError("OrderCache: base must be >= 2");
}

std::uint64_t OrderCache::order(std::uint64_t x) {
    if (auto it = orders_.find(x); it != orders_.end()) return it->second;
    const std::uint64_t ord = multiplicative_order(base_, x);
    orders_.emplace(x, ord);
    return ord;
}

std::uint64_t OrderCache::L(std::uint64_t x) { return lcm_u64(x, order(x)); }

std::uint64_t L_b(std::uint64_t x, std::uint64_t base) {
    if (x == 0) throw DomainError("L_b: x must be >= 1");
    return lcm_u64(x, multiplicative_order(base, x));
}

bool nonempty(std::uint64_t g, std::uint64_t base) {
    if (g == 0) throw DomainError("nonempty: g must be >= 1");
    if (base < 2) throw DomainError("nonempty: base must be >= 2");
    if (gcd_u64(g, base) != 1) return false;
    const std::uint64_t L = L_b(g, base);
    // (b^L - 1) mod L(b-1) = (b-1) * (R mod L) for the repunit R = (b^L - 1)/(b - 1).
    const std::uint64_t modulus = L * (base - 1);
    const std::uint64_t shifted = (powmod_u64(base, L, modulus) + modulus - 1) % modulus;
    const std::uint64_t repunit_mod_L = shifted / (base - 1);
    return gcd_u64(L, repunit_mod_L) == g;
}

std::uint64_t empirical_gcd(std::uint64_t k, std::uint64_t base) {
    if (k == 0) throw DomainError("empirical_gcd: k must be >= 1");
    if (base < 2) throw DomainError("empirical_gcd: base must be >= 2");
    const std::uint64_t modulus = k * (base - 1);
    const std::uint64_t shifted = (powmod_u64(base, k, modulus) + modulus - 1) % modulus;
    return gcd_u64(shifted / (base - 1), k);
}

std::map<std::uint64_t, std::uint64_t> empirical_histogram(std::uint64_t base, std::uint64_t K, unsigned workers) {
    workers = std::max(1u, workers);
    std::vector<std::map<std::uint64_t, std::uint64_t>> partial(workers);
    auto work = [&](unsigned w) {
        for (std::uint64_t k = 1 + w; k <= K; k += workers) ++partial[w][empirical_gcd(k, base)];
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    std::map<std::uint64_t, std::uint64_t> merged;
    for (const auto& p : partial)
        for (auto [g, c] : p) merged[g] += c;
    return merged;
}

DensityReport density_partial(std::uint64_t g, std::uint64_t base, std::uint64_t depth, std::uint64_t empirical_K,
                              unsigned workers) {
    if (g == 0 || depth == 0) throw DomainError("density: need g >= 1 and depth >= 1");
    DensityReport report;
    report.base = base;
    report.g = g;
    report.depth = depth;
    report.partial = 0;
    report.criterion_nonempty = nonempty(g, base);

    if (gcd_u64(g, base) == 1) {
        OrderCache cache(base);
        const std::vector<int> mu = mobius_table(depth);
        const std::uint64_t marks[] = {std::max<std::uint64_t>(1, depth / 4), std::max<std::uint64_t>(1, depth / 2),
                                       depth};
        std::size_t next_mark = 0;
        for (std::uint64_t d = 1; d <= depth; ++d) {
            if (mu[d] != 0 && gcd_u64(d, base) == 1) {
                report.partial += Rational(Integer(mu[d]), Integer(cache.L(d * g)));
                ++report.terms;
            }
            while (next_mark < 3 && marks[next_mark] == d) {
                report.checkpoints.emplace_back(d, report.partial);
                ++next_mark;
            }
        }
    } else {
        for (std::uint64_t mark : {std::max<std::uint64_t>(1, depth / 4), std::max<std::uint64_t>(1, depth / 2), depth})
            report.checkpoints.emplace_back(mark, Rational(0));
    }

    if (empirical_K > 0) {
        report.empirical_K = empirical_K;
        const auto histogram = empirical_histogram(base, empirical_K, workers);
        if (auto it = histogram.find(g); it != histogram.end()) report.empirical_count = it->second;
    }
    return report;
}

}  // namespace binpow

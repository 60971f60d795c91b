#pragma once

// Natural density of T_g^b = {k >= 1 : gcd(S_k^b) = g}, via the Moebius series
// sum over d coprime to b of mu(d) / L_b(dg), with L_b(x) = lcm(x, ord_x(b)).

#include <cstdint>
#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "binpow/integer.hpp"

namespace binpow {

/// Memoized ord_x(b) for a fixed base.
class OrderCache {
public:
    explicit OrderCache(std::uint64_t base);

    std::uint64_t base() const { return base_; }
    /// ord_x(b); throws DomainError unless gcd(x, b) = 1.
    std::uint64_t order(std::uint64_t x);
    /// lcm(x, ord_x(b)).
    std::uint64_t L(std::uint64_t x);

    const std::unordered_map<std::uint64_t, std::uint64_t>& entries() const { return orders_; }

private:
    std::uint64_t base_;
    std::unordered_map<std::uint64_t, std::uint64_t> orders_;
};

std::uint64_t L_b(std::uint64_t x, std::uint64_t base);

/// T_g^b is non-empty iff g = gcd(L_b(g), (b^{L_b(g)} - 1)/(b - 1)). Returns false
/// when gcd(g, b) > 1: (b^k - 1)/(b - 1) is coprime to b, so no gcd of S_k^b
/// can share a factor with b.
bool nonempty(std::uint64_t g, std::uint64_t base);

/// gcd((b^k - 1)/(b - 1), k) using arithmetic modulo k (b - 1) only.
std::uint64_t empirical_gcd(std::uint64_t k, std::uint64_t base);

/// count[g] = |{k <= K : gcd(S_k^b) = g}|, split across `workers` threads.
std::map<std::uint64_t, std::uint64_t> empirical_histogram(std::uint64_t base, std::uint64_t K,
                                                           unsigned workers = 1);

struct DensityReport {
    std::uint64_t base = 2;
    std::uint64_t g = 1;
    std::uint64_t depth = 0;
    Rational partial;
    /// (D', partial sum up to D') at D/4, D/2 and D.
    std::vector<std::pair<std::uint64_t, Rational>> checkpoints;
    std::uint64_t terms = 0;  // nonzero series terms included
    bool criterion_nonempty = false;
    std::uint64_t empirical_K = 0;
    std::uint64_t empirical_count = 0;

    double partial_value() const { return partial.convert_to<double>(); }
    double empirical_density() const {
        return empirical_K ? static_cast<double>(empirical_count) / static_cast<double>(empirical_K) : 0.0;
    }
};

/// Exact partial sum over squarefree d <= depth coprime to b, plus the empirical
/// count up to empirical_K when that is nonzero.
DensityReport density_partial(std::uint64_t g, std::uint64_t base, std::uint64_t depth,
                              std::uint64_t empirical_K = 0, unsigned workers = 1);

}  // namespace binpow

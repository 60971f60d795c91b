#include "binpow/search_verify.hpp"

#include <algorithm>
#include <bit>
#include <thread>

#include "binpow/errors.hpp"
#include "binpow/repr_core.hpp"

namespace binpow {

namespace {

using Words = std::vector<std::uint64_t>;

// next[w] |= (cur shifted up by s) restricted to words [begin, end).
void shift_or(const Words& cur, Words& next, std::uint64_t s, std::size_t begin, std::size_t end) {
    const std::size_t q = s / 64;
    const unsigned r = s % 64;
    begin = std::max(begin, q);
    if (r == 0) {
        for (std::size_t w = begin; w < end; ++w) next[w] |= cur[w - q];
        return;
    }
    for (std::size_t w = begin; w < end; ++w) {
        std::uint64_t v = cur[w - q] << r;
        if (w > q) v |= cur[w - q - 1] >> (64 - r);
        next[w] |= v;
    }
}

std::uint64_t popcount_upto(const Words& words, std::uint64_t limit) {
    std::uint64_t total = 0;
    const std::size_t full = (limit + 1) / 64;
    for (std::size_t w = 0; w < full; ++w) total += std::popcount(words[w]);
    const unsigned rest = (limit + 1) % 64;
    if (rest) total += std::popcount(words[full] & ((std::uint64_t{1} << rest) - 1));
    return total;
}

}  // namespace

std::uint64_t census_memory(std::uint64_t limit) { return 2 * ((limit / 64 + 1) * 8); }

ExceptionCensus census(std::uint64_t k, unsigned cap, std::uint64_t limit, const CensusConfig& config) {
    if (k == 0) throw DomainError("census: k must be >= 1");
    if (cap == 0) throw DomainError("census: cap must be >= 1");
    if (census_memory(limit) > config.memory_budget)
        throw ResourceError("census: limit " + std::to_string(limit) + " needs " +
                            std::to_string(census_memory(limit)) + " bytes, budget is " +
                            std::to_string(config.memory_budget));

    const std::size_t nwords = limit / 64 + 1;
    const std::vector<std::uint64_t> powers = binary_powers_u64(k, limit);
    unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, nwords));

    ExceptionCensus out;
    out.k = k;
    out.cap = cap;
    out.limit = limit;

    Words cur(nwords, 0);
    cur[0] = 1;  // the empty sum
    out.layer_sizes.push_back(1);
    Words next;
    for (unsigned round = 0; round < cap; ++round) {
        next = cur;
        // Chunks are disjoint word ranges of `next`; `cur` is read-only this round.
        const std::size_t chunk = (nwords + workers - 1) / workers;
        auto work = [&](std::size_t begin, std::size_t end) {
            for (std::uint64_t s : powers) shift_or(cur, next, s, begin, end);
        };
        if (workers == 1) {
            work(0, nwords);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) {
                const std::size_t begin = w * chunk;
                const std::size_t end = std::min(nwords, begin + chunk);
                if (begin < end) pool.emplace_back(work, begin, end);
            }
        }
        std::swap(cur, next);
        out.layer_sizes.push_back(popcount_upto(cur, limit));
    }

    for (std::size_t w = 0; w < nwords; ++w) {
        std::uint64_t missing = ~cur[w];
        while (missing) {
            const std::uint64_t value = w * 64 + static_cast<std::uint64_t>(std::countr_zero(missing));
            missing &= missing - 1;
            if (value > limit) break;
            ++out.exception_count;
            out.max_exception = value;
            if (config.keep_exceptions) out.exceptions.push_back(value);
        }
    }
    return out;
}

namespace {

std::vector<std::uint64_t> block_range(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t a = std::uint64_t{1} << (m - 1); a < (std::uint64_t{1} << m); ++a) out.push_back(a);
    return out;
}

}  // namespace

SumsetReport sumset_unique(std::uint64_t k, std::uint64_t n, std::uint64_t budget) {
    if (k == 0 || n == 0) throw DomainError("sumset: need k >= 1 and n >= 1");
    SumsetReport report;
    report.k = k;
    report.n = n;
    std::uint64_t tuple_bits = 0;
    for (std::uint64_t i = 0; i < k; ++i) tuple_bits += n + i - 1;
    report.expected = pow2(tuple_bits);
    if (tuple_bits >= 63 || (std::uint64_t{1} << tuple_bits) > budget)
        throw ResourceError("sumset: 2^" + std::to_string(tuple_bits) + " tuples exceed budget " +
                            std::to_string(budget));
    // Largest summand has k(n+k-1) bits; k of them need log2(k) more.
    if (k * (n + k - 1) + std::bit_width(k) > 64) throw ResourceError("sumset: sums do not fit in 64 bits");

    std::vector<std::uint64_t> multipliers(k);
    for (std::uint64_t i = 0; i < k; ++i) multipliers[i] = c_k(k, n + i).convert_to<std::uint64_t>();

    std::vector<std::uint64_t> sums{0};
    for (std::uint64_t i = 0; i < k; ++i) {
        std::vector<std::uint64_t> grown;
        grown.reserve(sums.size() << (n + i - 1));
        for (std::uint64_t a : block_range(n + i)) {
            const std::uint64_t term = a * multipliers[i];
            for (std::uint64_t s : sums) grown.push_back(s + term);
        }
        sums = std::move(grown);
    }
    std::sort(sums.begin(), sums.end());
    const auto dup = std::adjacent_find(sums.begin(), sums.end());
    const std::optional<std::uint64_t> repeated =
        dup == sums.end() ? std::nullopt : std::optional<std::uint64_t>(*dup);
    report.observed = static_cast<std::uint64_t>(std::unique(sums.begin(), sums.end()) - sums.begin());

    if (repeated) {
        // Re-enumerate to recover two tuples hitting the first repeated sum.
        const std::uint64_t target = *repeated;
        std::vector<std::vector<std::uint64_t>> hits;
        std::vector<std::uint64_t> tuple(k);
        auto search = [&](auto&& self, std::uint64_t i, std::uint64_t partial) -> void {
            if (hits.size() == 2) return;
            if (i == k) {
                if (partial == target) hits.push_back(tuple);
                return;
            }
            for (std::uint64_t a : block_range(n + i)) {
                const std::uint64_t next = partial + a * multipliers[i];
                if (next > target) break;
                tuple[i] = a;
                self(self, i + 1, next);
            }
        };
        search(search, 0, 0);
        if (hits.size() == 2) report.collision = std::make_pair(hits[0], hits[1]);
    }
    return report;
}

}  // namespace binpow

#pragma once

// Exhaustive searches: bounded-count representability census and sumset uniqueness.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "binpow/integer.hpp"

namespace binpow {

struct CensusConfig {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned workers = 0;
    /// Bytes allowed for the two live layers.
    std::uint64_t memory_budget = std::uint64_t{1} << 30;
    bool keep_exceptions = true;
};

struct ExceptionCensus {
    std::uint64_t k = 0;
    unsigned cap = 0;
    std::uint64_t limit = 0;
    std::uint64_t exception_count = 0;
    std::optional<std::uint64_t> max_exception;
    std::vector<std::uint64_t> exceptions;
    /// Population of layer t (sums of <= t powers) within [0, limit], t = 0..cap.
    std::vector<std::uint64_t> layer_sizes;
};

/// Every N <= limit that is not a sum of at most `cap` elements of S_k.
/// Layer t+1 is the union of layer t shifted by every s in S_k, s <= limit.
ExceptionCensus census(std::uint64_t k, unsigned cap, std::uint64_t limit, const CensusConfig& config = {});

/// Bytes the census needs for `limit`.
std::uint64_t census_memory(std::uint64_t limit);

struct SumsetReport {
    std::uint64_t k = 0;
    std::uint64_t n = 0;
    Integer expected;  // prod_{0 <= i < k} 2^{n+i-1}
    std::uint64_t observed = 0;
    /// Two distinct tuples (one a per C_{n+i}) with equal sums, if any.
    std::optional<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> collision;

    bool unique() const { return Integer(observed) == expected; }
};

/// Distinct sums in C_n + C_{n+1} + ... + C_{n+k-1}, where C_m holds the km-bit
/// binary k'th powers. Throws ResourceError if the tuple count exceeds `budget`
/// or the sums do not fit in 64 bits.
SumsetReport sumset_unique(std::uint64_t k, std::uint64_t n, std::uint64_t budget = std::uint64_t{1} << 22);

}  // namespace binpow

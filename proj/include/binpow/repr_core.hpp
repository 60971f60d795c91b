#pragma once

// Base-b k'th powers: numbers whose canonical base-b expansion is k copies
// of one n-digit block. Such a number is a * c_k^b(n) with b^(n-1) <= a < b^n,
// where c_k^b(n) = 1 + b^n + ... + b^((k-1)n).

#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "binpow/integer.hpp"

namespace binpow {

/// c_k^b(n) = (b^{kn} - 1) / (b^n - 1), exact.
Integer c_kb(std::uint64_t base, std::uint64_t k, std::uint64_t n);

/// Binary shorthand c_k(n) = c_k^2(n).
inline Integer c_k(std::uint64_t k, std::uint64_t n) { return c_kb(2, k, n); }

/// One base-b k'th power: k repetitions of the n-digit block a.
struct BlockPower {
    std::uint64_t base = 2;
    std::uint64_t k = 1;
    std::uint64_t n = 1;
    Integer a = 1;

    Integer value() const { return a * c_kb(base, k, n); }

    /// b^{n-1} <= a < b^n and all parameters in range.
    bool well_formed() const;

    friend bool operator==(const BlockPower&, const BlockPower&) = default;
};

std::string to_string(const BlockPower& p);

/// Returns the BlockPower whose value is N, or nullopt. N = 0 is treated as the
/// degenerate member and comes back as nullopt too; use is_member for plain tests.
std::optional<BlockPower> recognize(const Integer& value, std::uint64_t k, std::uint64_t base = 2);

/// Membership in S_k^b, counting 0 as a member.
bool is_member(const Integer& value, std::uint64_t k, std::uint64_t base = 2);

/// Largest element of S_k^b not exceeding `bound` (0 if none is positive).
Integer floor_member(const Integer& bound, std::uint64_t k, std::uint64_t base = 2);

/// Increasing stream over {s in S_k^b : s <= limit}, starting with 0.
///
/// Elements of block length n all lie in [b^{kn-1}, b^{kn}), so the per-length
/// progressions a * c(n) never interleave and the merge reduces to walking
/// lengths in order.
class PowerSetView {
public:
    PowerSetView(std::uint64_t base, std::uint64_t k, Integer limit);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Integer;
        using difference_type = std::ptrdiff_t;
        using pointer = const Integer*;
        using reference = const Integer&;

        iterator() = default;

        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }

        friend bool operator==(const iterator& it, std::default_sentinel_t) { return it.done_; }

    private:
        friend class PowerSetView;
        iterator(const PowerSetView* view);
        void enter_length(std::uint64_t n);

        const PowerSetView* view_ = nullptr;
        bool done_ = true;
        std::uint64_t n_ = 0;
        Integer a_, a_end_, step_, current_;
    };

    iterator begin() const { return iterator(this); }
    std::default_sentinel_t end() const { return {}; }

    std::uint64_t base() const { return base_; }
    std::uint64_t k() const { return k_; }
    const Integer& limit() const { return limit_; }

    /// Drains the stream into a vector.
    std::vector<Integer> to_vector() const;

private:
    std::uint64_t base_;
    std::uint64_t k_;
    Integer limit_;
};

inline PowerSetView enumerate(std::uint64_t base, std::uint64_t k, const Integer& limit) {
    return PowerSetView(base, k, limit);
}

/// Positive elements of S_k (base 2) up to `limit` as machine words, ascending.
/// Throws DomainError if `limit` exceeds 64 bits.
std::vector<std::uint64_t> binary_powers_u64(std::uint64_t k, std::uint64_t limit);

}  // namespace binpow

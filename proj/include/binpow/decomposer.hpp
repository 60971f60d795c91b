#pragma once

// Constructive decomposition of multiples of E_k into binary k'th powers.
//
// For N > F_k E_k the pipeline sets Z = (F_k + 1) E_k, X = N - Z, picks the block
// length n from the exact test 2^{nk} c^{-k} < X, peels X into
// sum_i e_i c_k(n+i) + Y with Y < c_k(n), rewrites Y in the c_k(n+i) basis with
// denominator d_k, splits the integer parts, turns the fractional parts into
// powers of the form floor(2^m / d_k) where the exponent allows it, and hands
// whatever is left (always >= Z and a multiple of E_k) to the tail.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "binpow/frobenius.hpp"
#include "binpow/integer.hpp"
#include "binpow/power_multiset.hpp"
#include "binpow/repr_core.hpp"
#include "binpow/vandermonde.hpp"

namespace binpow {

/// a * c_k(n) as at most ceil(a / (2^n - 1)) powers of block length n:
/// (q - 2) copies of 2^n - 1 plus two blocks d1 <= d2 in [2^{n-1}, 2^n).
PowerMultiset split_multiple(const Integer& a, std::uint64_t n, std::uint64_t k,
                             Stage stage = Stage::SplitX1);

/// floor(2^{jm+e} / f) as a binary j'th power with block length m = ord_f(2),
/// where f > 1 is odd and e = floor(log2 f). The block is q 2^e with q = (2^m - 1)/f.
BlockPower periodic_fraction_power(std::uint64_t f, std::uint64_t j);

/// floor(2^n / g) = copies * value(power) + remainder.
struct Pow2Fraction {
    BlockPower power;
    Integer copies;
    Integer remainder;
};

/// Does n satisfy n >= k f + l + log2 f for g = 2^l f?
bool floor_pow2_precondition(std::uint64_t n, const Integer& g, std::uint64_t k);

/// Writes floor(2^n / g) as 2^i copies of one binary k'th power plus t.
/// Throws DomainError when floor_pow2_precondition fails.
Pow2Fraction floor_pow2_over(std::uint64_t n, const Integer& g, std::uint64_t k);

/// Exact minimal-count table over S_k for 0..limit (one byte per value).
class RepresentationTable {
public:
    static constexpr unsigned kUnreachable = 255;

    RepresentationTable(std::uint64_t k, std::uint64_t limit);

    std::uint64_t k() const { return k_; }
    std::uint64_t limit() const { return limit_; }
    /// Minimal number of summands, or kUnreachable (also used for counts >= 255).
    unsigned min_count(std::uint64_t value) const { return counts_.at(value); }
    /// A witness of minimal length; empty optional when unreachable.
    std::optional<std::vector<std::uint64_t>> witness(std::uint64_t value) const;

private:
    std::uint64_t k_;
    std::uint64_t limit_;
    std::vector<std::uint64_t> powers_;
    std::vector<std::uint8_t> counts_;
};

struct MinRepresentation {
    unsigned count = 0;
    std::vector<Integer> terms;
};

inline constexpr std::uint64_t kDefaultDpLimit = std::uint64_t{1} << 24;

/// Fewest elements of S_k summing to N, if that number is <= cap.
/// Throws LimitExceeded when N > dp_limit.
std::optional<MinRepresentation> min_representation(const Integer& value, std::uint64_t k, unsigned cap,
                                                    std::uint64_t dp_limit = kDefaultDpLimit);

/// One level of the pipeline: the quantities the construction runs through.
struct PipelineAudit {
    Integer target;  // the value this level decomposes
    Integer Z, X;
    std::uint64_t n = 0;
    Integer Q, R, Y;
    std::vector<Integer> r, e, digits;
    std::vector<Integer> b_numerators;  // shared denominator d_k
    Integer denominator;
    std::vector<Integer> floors, fractions;  // floor(e_i + b_i) and its remainder v_i (over d_k)
    Integer X1, X2, X3, X4, tail;
    bool lower_bound_holds = false;
    Rational max_upper_ratio;  // max_i (e_i + b_i) / 2^n
    std::uint64_t fraction_terms_used = 0;
    std::uint64_t fraction_terms_deferred = 0;
};

struct Decomposition {
    Integer N;
    std::uint64_t base = 2;
    std::uint64_t k = 1;
    PowerMultiset terms;
    std::vector<PipelineAudit> levels;
    /// Pipeline attempts rejected because the lower coefficient bound failed.
    std::uint64_t rejected_attempts = 0;
    /// "pipeline", "fallback" (exact DP), "table" (greedy + semigroup table) or "trivial".
    std::string method;
};

struct DecomposerConfig {
    std::uint64_t dp_limit = kDefaultDpLimit;
    FrobeniusLimits frobenius;
    /// Recursion guard on tail levels; the tail shrinks like N^{(k-1)/k}.
    unsigned max_levels = 64;
};

/// Immutable once constructed except for the lazily grown DP table, which is
/// guarded internally; decompose() may be called concurrently.
class Decomposer {
public:
    explicit Decomposer(std::uint64_t k, DecomposerConfig config = {});

    Decomposition decompose(const Integer& value) const;

    std::uint64_t k() const { return k_; }
    std::uint64_t gcd() const { return gcd_; }
    const Integer& frobenius() const { return table_->frobenius(); }
    const SemigroupTable& table() const { return *table_; }
    const VanderSystem<Integer>& vander() const { return vander_; }

    /// Block length picked for X: the largest n with 2^{nk} c^{-k} < X, or 0.
    std::uint64_t choose_n(const Integer& X) const;

    /// c^{-k} = (2^{k-2} + k l_k + 1) 2^{k^2-k+1} as numerator over d_k.
    const Integer& c_power_numerator() const { return c_pow_num_; }

private:
    std::optional<PipelineAudit> run_level(const Integer& value, std::uint64_t n, PowerMultiset& out) const;
    void decompose_tail(const Integer& value, unsigned level, Decomposition& result) const;
    bool try_pipeline(const Integer& value, unsigned level, Decomposition& result) const;
    PowerMultiset dp_fallback(const Integer& value) const;

    std::uint64_t k_;
    std::uint64_t gcd_ = 1;
    DecomposerConfig config_;
    const SemigroupTable* table_ = nullptr;
    VanderSystem<Integer> vander_;
    Integer c_pow_num_;

    mutable std::mutex dp_mutex_;
    mutable std::shared_ptr<const RepresentationTable> dp_;
};

/// Convenience wrapper with a per-k cached Decomposer using default settings.
Decomposition decompose(const Integer& value, std::uint64_t k);

struct VerificationResult {
    bool ok = false;
    std::string reason;
};

/// Independent re-check: every term is a well-formed power that recognize()
/// reproduces, the terms sum to N, and N is a multiple of E_k.
VerificationResult verify_decomposition(const Integer& N, std::uint64_t k, const PowerMultiset& terms);

}  // namespace binpow

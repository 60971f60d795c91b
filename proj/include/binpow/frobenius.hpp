#pragma once

// Frobenius numbers of E_k^{-1} S_k via shortest paths over residues modulo the
// smallest positive generator m0 = (2^k - 1) / E_k.

#include <cstdint>
#include <vector>

#include "binpow/integer.hpp"
#include "binpow/power_multiset.hpp"

namespace binpow {

/// ab - a - b. Throws DomainError unless gcd(a, b) = 1 and a, b >= 2.
Integer two_generator_frobenius(const Integer& a, const Integer& b);

/// Lemma-style upper bound: Frobenius number of the scaled pair
/// {(2^k - 1)/E_k, (2^k - 2)(2^{k^2} - 1)/((2^k - 1) E_k)}.
Integer two_generator_bound(std::uint64_t k);

class SemigroupTable {
public:
    std::uint64_t k() const { return k_; }
    std::uint64_t gcd() const { return gcd_; }
    std::uint64_t modulus() const { return modulus_; }
    /// Scaled generators s / E_k actually used (all of them <= max_minimal()).
    const std::vector<Integer>& generators() const { return generators_; }
    /// Smallest representable scaled value congruent to r modulo m0.
    const Integer& minimal(std::uint64_t residue) const { return minimal_.at(residue); }
    const std::vector<Integer>& minimal_values() const { return minimal_; }
    const Integer& max_minimal() const { return max_minimal_; }
    /// F_k = max_r minimal(r) - m0.
    const Integer& frobenius() const { return frobenius_; }
    /// Generator cutoff the table was built with.
    const Integer& cutoff() const { return cutoff_; }

    /// Is u (a scaled value, i.e. already divided by E_k) a sum of scaled generators?
    bool representable_scaled(const Integer& u) const;
    /// Is v (unscaled) a sum of elements of S_k?
    bool representable(const Integer& v) const;

    /// Scaled generators summing to minimal(r), recovered from the shortest-path tree.
    std::vector<Integer> walk_back(std::uint64_t residue) const;

    friend SemigroupTable build_semigroup_table(std::uint64_t k, const Integer& cutoff);

private:
    std::uint64_t k_ = 0;
    std::uint64_t gcd_ = 1;
    std::uint64_t modulus_ = 1;
    Integer cutoff_;
    std::vector<Integer> generators_;
    std::vector<Integer> minimal_;
    std::vector<std::int64_t> via_;  // generator index of the last edge, -1 at the root
    Integer max_minimal_;
    Integer frobenius_;
};

struct FrobeniusLimits {
    std::uint64_t max_k = 6;
    /// Largest residue modulus accepted.
    std::uint64_t max_modulus = 1u << 16;
};

/// Builds the table with the given scaled-generator cutoff. A cutoff of 0 uses
/// two_generator_bound(k) + m0, which provably covers every minimal value.
/// The stored generator list is trimmed to those <= max_minimal().
SemigroupTable build_semigroup_table(std::uint64_t k, const Integer& cutoff = 0);

/// Same as build_semigroup_table(k) with the size limits enforced (ResourceError).
SemigroupTable semigroup_table(std::uint64_t k, const FrobeniusLimits& limits = {});

/// Cached per k; thread-safe. Tables are immutable once built.
const SemigroupTable& cached_semigroup_table(std::uint64_t k, const FrobeniusLimits& limits = {});

/// F_k for 2 <= k <= limits.max_k.
Integer frobenius_number(std::uint64_t k, const FrobeniusLimits& limits = {});

/// Rebuilds with the cutoff doubled and reports whether F_k and the minimal
/// values are unchanged.
bool stabilization_holds(const SemigroupTable& table);

/// Elements of S_k summing to v. Greedy descent from the largest element,
/// taking a step only when the remainder stays representable per the table.
/// Throws NotMultipleOfGcd or NotRepresentable.
PowerMultiset represent(const Integer& value, const SemigroupTable& table, Stage stage = Stage::Tail);

}  // namespace binpow

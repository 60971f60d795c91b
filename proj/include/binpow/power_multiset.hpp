#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "binpow/integer.hpp"
#include "binpow/repr_core.hpp"

namespace binpow {

/// Which part of the construction produced a term.
enum class Stage {
    SplitX1,     // floors of e_i + b_i, split into in-range blocks
    FractionX4,  // Lemma-style powers approximating v_i 2^{(n+i)j} / d_k
    Tail,        // remainder >= Z handled by the semigroup table
    Fallback,    // exact minimal representation for small N
};

std::string_view to_string(Stage stage);
Stage stage_from_string(std::string_view text);

/// `copies` identical terms equal to `power`.
struct WeightedPower {
    BlockPower power;
    Integer copies = 1;
    Stage stage = Stage::Tail;
};

/// A multiset of block powers kept as (power, copies) pairs.
class PowerMultiset {
public:
    void add(const BlockPower& power, const Integer& copies = 1, Stage stage = Stage::Tail);
    void append(const PowerMultiset& other, const Integer& times = 1);

    Integer total() const;
    /// Number of terms counted with multiplicity.
    Integer count() const;
    bool empty() const { return terms_.empty(); }

    const std::vector<WeightedPower>& terms() const { return terms_; }

private:
    std::vector<WeightedPower> terms_;
};

}  // namespace binpow

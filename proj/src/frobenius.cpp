#include "binpow/frobenius.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <queue>

#include "binpow/errors.hpp"
#include "binpow/gcd_theory.hpp"
#include "binpow/repr_core.hpp"

namespace binpow {

Integer two_generator_frobenius(const Integer& a, const Integer& b) {
    if (a < 2 || b < 2) throw DomainError("two_generator_frobenius: generators must be >= 2");
    if (gcd(a, b) != 1) throw DomainError("two_generator_frobenius: generators must be coprime");
    return a * b - a - b;
}

Integer two_generator_bound(std::uint64_t k) {
    if (k < 2) throw DomainError("two_generator_bound: k must be >= 2");
    const Integer e(gcd_of_powers(2, k));
    const Integer g1 = pow2(k) - 1;
    const Integer g2 = (pow2(k) - 2) * ((pow2(k * k) - 1) / g1);
    return two_generator_frobenius(g1 / e, g2 / e);
}

SemigroupTable build_semigroup_table(std::uint64_t k, const Integer& cutoff_in) {
    if (k < 2) throw DomainError("frobenius: k must be >= 2");
    SemigroupTable t;
    t.k_ = k;
    t.gcd_ = gcd_of_powers(2, k);
    t.modulus_ = ((pow2(k) - 1) / t.gcd_).convert_to<std::uint64_t>();
    t.cutoff_ = cutoff_in > 0 ? cutoff_in : two_generator_bound(k) + t.modulus_;

    std::vector<Integer> gens;
    for (const Integer& s : enumerate(2, k, t.cutoff_ * t.gcd_)) {
        if (!s.is_zero()) gens.push_back(s / t.gcd_);
    }

    // Dijkstra over residues; an edge adds one generator.
    const std::uint64_t m0 = t.modulus_;
    std::vector<Integer> dist(m0, Integer(-1));
    std::vector<std::int64_t> via(m0, -1);
    std::vector<bool> settled(m0, false);
    using Entry = std::pair<Integer, std::uint64_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
    dist[0] = 0;
    frontier.emplace(Integer(0), 0);
    while (!frontier.empty()) {
        auto [d, r] = frontier.top();
        frontier.pop();
        if (settled[r]) continue;
        settled[r] = true;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const Integer cand = d + gens[g];
            const std::uint64_t next = (r + (gens[g] % m0).convert_to<std::uint64_t>()) % m0;
            if (settled[next]) continue;
            if (dist[next] < 0 || cand < dist[next]) {
                dist[next] = cand;
                via[next] = static_cast<std::int64_t>(g);
                frontier.emplace(cand, next);
            }
        }
    }
    for (std::uint64_t r = 0; r < m0; ++r) {
        if (dist[r] < 0)
            throw InternalBoundViolation("frobenius: residue " + std::to_string(r) +
                                         " unreachable; gcd of scaled generators is not 1");
    }

    t.max_minimal_ = 0;
    for (const auto& v : dist)
        if (v > t.max_minimal_) t.max_minimal_ = v;
    t.frobenius_ = t.max_minimal_ - m0;

    // Generators above every minimal value never lie on a shortest path.
    std::vector<std::int64_t> remap(gens.size(), -1);
    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (gens[g] <= t.max_minimal_) {
            remap[g] = static_cast<std::int64_t>(t.generators_.size());
            t.generators_.push_back(gens[g]);
        }
    }
    for (auto& v : via)
        if (v >= 0) v = remap[static_cast<std::size_t>(v)];
    t.minimal_ = std::move(dist);
    t.via_ = std::move(via);
    return t;
}

bool SemigroupTable::representable_scaled(const Integer& u) const {
    if (u < 0) return false;
    const auto r = (u % modulus_).convert_to<std::uint64_t>();
    return u >= minimal_[r];
}

bool SemigroupTable::representable(const Integer& v) const {
    if (v < 0 || v % gcd_ != 0) return false;
    return representable_scaled(v / gcd_);
}

std::vector<Integer> SemigroupTable::walk_back(std::uint64_t residue) const {
    std::vector<Integer> path;
    std::uint64_t r = residue % modulus_;
    while (r != 0) {
        const auto g = via_.at(r);
        if (g < 0) throw InternalBoundViolation("frobenius: broken shortest-path tree");
        const Integer& gen = generators_[static_cast<std::size_t>(g)];
        path.push_back(gen);
        const auto step = (gen % modulus_).convert_to<std::uint64_t>();
        r = (r + modulus_ - step) % modulus_;
    }
    return path;
}

namespace {

void check_limits(std::uint64_t k, const FrobeniusLimits& limits) {
    if (k < 2) throw DomainError("frobenius: k must be >= 2");
    if (k > limits.max_k)
        throw LimitExceeded("frobenius: k = " + std::to_string(k) + " exceeds the configured maximum " +
                            std::to_string(limits.max_k));
    const Integer modulus = (pow2(k) - 1) / gcd_of_powers(2, k);
    if (modulus > limits.max_modulus)
        throw ResourceError("frobenius: residue table of size " + modulus.str() + " exceeds budget");
}

}  // namespace

SemigroupTable semigroup_table(std::uint64_t k, const FrobeniusLimits& limits) {
    check_limits(k, limits);
    return build_semigroup_table(k);
}

const SemigroupTable& cached_semigroup_table(std::uint64_t k, const FrobeniusLimits& limits) {
    check_limits(k, limits);
    static std::mutex mutex;
    static std::map<std::uint64_t, std::unique_ptr<const SemigroupTable>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[k];
    if (!slot) slot = std::make_unique<const SemigroupTable>(build_semigroup_table(k));
    return *slot;
}

Integer frobenius_number(std::uint64_t k, const FrobeniusLimits& limits) {
    return cached_semigroup_table(k, limits).frobenius();
}

bool stabilization_holds(const SemigroupTable& table) {
    const SemigroupTable doubled = build_semigroup_table(table.k(), table.cutoff() * 2);
    return doubled.frobenius() == table.frobenius() &&
           doubled.minimal_values() == table.minimal_values();
}

PowerMultiset represent(const Integer& value, const SemigroupTable& table, Stage stage) {
    const std::uint64_t k = table.k();
    if (value < 0) throw DomainError("represent: value must be non-negative");
    if (value % table.gcd() != 0)
        throw NotMultipleOfGcd("represent: " + value.str() + " is not a multiple of E_" +
                               std::to_string(k) + " = " + std::to_string(table.gcd()));
    if (!table.representable(value))
        throw NotRepresentable("represent: " + value.str() + " is not a sum of binary k'th powers for k = " +
                               std::to_string(k) + " (F_" + std::to_string(k) + " = " +
                               table.frobenius().str() + ")");

    // Everything above this is representable.
    const Integer safe = table.frobenius() * table.gcd();
    PowerMultiset out;
    Integer rest = value;
    while (rest > 0) {
        Integer s = floor_member(rest, k);
        while (!table.representable(rest - s)) {
            s = floor_member(s - 1, k);
            if (s.is_zero()) throw InternalBoundViolation("represent: greedy descent ran out of elements");
        }
        Integer copies = 1;
        if (rest - s > safe) {
            const Integer bulk = (rest - safe - 1) / s;
            if (bulk > copies) copies = bulk;
        }
        out.add(*recognize(s, k), copies, stage);
        rest -= copies * s;
    }
    return out;
}

}  // namespace binpow

#include "binpow/decomposer.hpp"

#include <bit>
#include <map>

#include "binpow/errors.hpp"
#include "binpow/gcd_theory.hpp"
#include "binpow/number_theory.hpp"

namespace binpow {

PowerMultiset split_multiple(const Integer& a, std::uint64_t n, std::uint64_t k, Stage stage) {
    if (n == 0 || k == 0) throw DomainError("split_multiple: need n >= 1 and k >= 1");
    const Integer top = pow2(n) - 1;
    if (a < pow2(n - 1))
        throw DomainError("split_multiple: a = " + a.str() + " is below 2^(n-1) for n = " + std::to_string(n));
    PowerMultiset out;
    if (a <= top) {
        out.add(BlockPower{2, k, n, a}, 1, stage);
        return out;
    }
    const Integer q = (a + top - 1) / top;
    const Integer c = top * q - a;
    const Integer d1 = top - (c + 1) / 2;
    const Integer d2 = top - c / 2;
    out.add(BlockPower{2, k, n, top}, q - 2, stage);
    out.add(BlockPower{2, k, n, d1}, 1, stage);
    out.add(BlockPower{2, k, n, d2}, 1, stage);
    return out;
}

BlockPower periodic_fraction_power(std::uint64_t f, std::uint64_t j) {
    if (f <= 1 || f % 2 == 0) throw DomainError("periodic_fraction_power: f must be odd and > 1");
    if (j == 0) throw DomainError("periodic_fraction_power: j must be >= 1");
    const auto e = static_cast<std::uint64_t>(std::bit_width(f) - 1);
    const std::uint64_t m = multiplicative_order(2, f);
    const Integer q = (pow2(m) - 1) / f;
    const Integer block = q << static_cast<unsigned>(e);
    if (block < pow2(m - 1) || block >= pow2(m))
        throw InternalBoundViolation("periodic_fraction_power: block q*2^e out of range for f = " +
                                     std::to_string(f));
    return BlockPower{2, j, m, block};
}

namespace {

struct OddSplit {
    std::uint64_t twos;
    Integer odd;
};

OddSplit split_two_power(const Integer& g) {
    const auto twos = static_cast<std::uint64_t>(boost::multiprecision::lsb(g));
    return {twos, g >> static_cast<unsigned>(twos)};
}

}  // namespace

bool floor_pow2_precondition(std::uint64_t n, const Integer& g, std::uint64_t k) {
    if (g <= 0 || k == 0) return false;
    const auto [l, f] = split_two_power(g);
    const Integer need = Integer(k) * f + l;
    if (Integer(n) < need) return false;
    // n - need >= log2 f  <=>  2^{n - need} >= f
    const auto slack = static_cast<std::uint64_t>(n - need.convert_to<std::uint64_t>());
    return slack >= 64 * 1024 || pow2(slack) >= f;
}

Pow2Fraction floor_pow2_over(std::uint64_t n, const Integer& g, std::uint64_t k) {
    if (!floor_pow2_precondition(n, g, k))
        throw DomainError("floor_pow2_over: need n >= k f + l + log2 f (n = " + std::to_string(n) +
                          ", g = " + g.str() + ", k = " + std::to_string(k) + ")");
    const auto [l, f_big] = split_two_power(g);
    Pow2Fraction out;
    if (f_big == 1) {
        const std::uint64_t r = (n - l) / k;
        const std::uint64_t i = (n - l) % k;
        out.power = BlockPower{2, k, r, pow2(r) - 1};
        out.copies = pow2(i);
        out.remainder = pow2(i);
    } else {
        const std::uint64_t f = to_u64(f_big, "odd part of g");
        const auto e = static_cast<std::uint64_t>(std::bit_width(f) - 1);
        const std::uint64_t m = multiplicative_order(2, f);
        const std::uint64_t r = (n - l - e) / (k * m);
        const std::uint64_t i = (n - l - e) % (k * m);
        const BlockPower long_form = periodic_fraction_power(f, r * k);
        auto as_k_power = recognize(long_form.value(), k);
        if (!as_k_power || as_k_power->n != r * m)
            throw InternalBoundViolation("floor_pow2_over: regrouped power is not a k'th power");
        out.power = *as_k_power;
        out.copies = pow2(i);
        out.remainder = pow2(i + e) / f;
    }
    if (n <= 4096 && out.copies * out.power.value() + out.remainder != pow2(n) / g)
        throw InternalBoundViolation("floor_pow2_over: identity failed for n = " + std::to_string(n));
    return out;
}

RepresentationTable::RepresentationTable(std::uint64_t k, std::uint64_t limit)
    : k_(k), limit_(limit), powers_(binary_powers_u64(k, limit)), counts_(limit + 1, kUnreachable) {
    counts_[0] = 0;
    std::uint8_t* counts = counts_.data();
    for (std::uint64_t s : powers_) {
        for (std::uint64_t x = s; x <= limit; ++x) {
            const unsigned via = counts[x - s] + 1u;
            if (via < counts[x]) counts[x] = static_cast<std::uint8_t>(via);
        }
    }
}

std::optional<std::vector<std::uint64_t>> RepresentationTable::witness(std::uint64_t value) const {
    if (value > limit_ || counts_[value] == kUnreachable) return std::nullopt;
    std::vector<std::uint64_t> terms;
    std::uint64_t x = value;
    while (x > 0) {
        const unsigned want = counts_[x] - 1u;
        bool found = false;
        for (auto it = powers_.rbegin(); it != powers_.rend(); ++it) {
            if (*it <= x && counts_[x - *it] == want) {
                terms.push_back(*it);
                x -= *it;
                found = true;
                break;
            }
        }
        if (!found) throw InternalBoundViolation("RepresentationTable: inconsistent table");
    }
    return terms;
}

std::optional<MinRepresentation> min_representation(const Integer& value, std::uint64_t k, unsigned cap,
                                                    std::uint64_t dp_limit) {
    if (value < 0) throw DomainError("min_representation: value must be non-negative");
    if (cap == 0) throw DomainError("min_representation: cap must be >= 1");
    if (value > dp_limit)
        throw LimitExceeded("min_representation: " + value.str() + " exceeds DP limit " + std::to_string(dp_limit));
    const auto v = value.convert_to<std::uint64_t>();
    const RepresentationTable table(k, v);
    const unsigned count = table.min_count(v);
    if (count == RepresentationTable::kUnreachable || count > cap) return std::nullopt;
    MinRepresentation out;
    out.count = count;
    const auto witness = table.witness(v);
    for (std::uint64_t s : *witness) out.terms.emplace_back(s);
    return out;
}

Decomposer::Decomposer(std::uint64_t k, DecomposerConfig config) : k_(k), config_(config) {
    if (k == 0) throw DomainError("decompose: k must be >= 1");
    gcd_ = gcd_of_powers(2, k);
    if (k == 1) return;
    table_ = &cached_semigroup_table(k, config_.frobenius);
    vander_ = build_vander<Integer>(static_cast<Eigen::Index>(k));
    const Integer& d = vander_.det;
    c_pow_num_ = ((pow2(k - 2) + 1) * d + Integer(k) * vander_.max_abs_adj) * pow2(k * k - k + 1);
}

std::uint64_t Decomposer::choose_n(const Integer& X) const {
    if (X <= 0) return 0;
    const Integer rhs = X * vander_.det;
    auto fits = [&](std::uint64_t n) { return (c_pow_num_ << static_cast<unsigned>(n * k_)) < rhs; };
    std::uint64_t n = 0;
    if (bit_length(rhs) > bit_length(c_pow_num_)) n = (bit_length(rhs) - bit_length(c_pow_num_)) / k_;
    while (n > 0 && !fits(n)) --n;
    while (fits(n + 1)) ++n;
    return n;
}

std::optional<PipelineAudit> Decomposer::run_level(const Integer& value, std::uint64_t n,
                                                   PowerMultiset& out) const {
    const std::uint64_t k = k_;
    const Integer& d = vander_.det;
    PipelineAudit audit;
    audit.target = value;
    audit.Z = (table_->frobenius() + 1) * gcd_;
    audit.X = value - audit.Z;
    audit.n = n;
    audit.denominator = d;

    std::vector<Integer> c(k);
    for (std::uint64_t i = 0; i < k; ++i) c[i] = c_k(k, n + i);
    audit.Q = 0;
    for (const auto& ci : c) audit.Q += ci;
    audit.R = audit.X / audit.Q;

    // Greedy from the largest multiplier down.
    Integer rest = audit.X - audit.R * audit.Q;
    audit.r.assign(k, 0);
    for (std::uint64_t i = k; i-- > 0;) {
        audit.r[i] = rest / c[i];
        rest -= audit.r[i] * c[i];
    }
    audit.Y = rest;
    audit.e.resize(k);
    for (std::uint64_t i = 0; i < k; ++i) audit.e[i] = audit.R + audit.r[i];

    // Y < c_k(n) < 2^{kn}: base-2^n digits.
    RowVectorX<Integer> digits(static_cast<Eigen::Index>(k));
    const Integer mask = pow2(n) - 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        digits(static_cast<Eigen::Index>(i)) = (audit.Y >> static_cast<unsigned>(i * n)) & mask;
        audit.digits.push_back(digits(static_cast<Eigen::Index>(i)));
    }
    const RationalVector<Integer> b = solve_coeffs(vander_, digits);

    // Coefficients e_i + b_i = w_i / d_k.
    std::vector<Integer> w(k);
    audit.lower_bound_holds = true;
    audit.max_upper_ratio = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
        audit.b_numerators.push_back(b.numerators(static_cast<Eigen::Index>(i)));
        w[i] = audit.e[i] * d + audit.b_numerators.back();
        if (w[i] < pow2(n + i - 1) * d) audit.lower_bound_holds = false;
        const Rational ratio(w[i], d * pow2(n));
        if (ratio > audit.max_upper_ratio) audit.max_upper_ratio = ratio;
    }
    if (!audit.lower_bound_holds) return std::nullopt;

    PowerMultiset level;
    audit.X1 = 0;
    Integer scaled_x2 = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
        const Integer fl = floor_div(w[i], d);
        const Integer v = w[i] - fl * d;
        audit.floors.push_back(fl);
        audit.fractions.push_back(v);
        audit.X1 += fl * c[i];
        scaled_x2 += v * c[i];
        level.append(split_multiple(fl, n + i, k, Stage::SplitX1));
    }
    audit.X2 = audit.X - audit.X1;
    if (audit.X2 * d != scaled_x2)
        throw InternalBoundViolation("decompose: fractional part X_2 is not sum v_i c_k(n+i) / d_k");

    // v_i 2^{(n+i)j} / d_k for j >= 1; j = 0 floors to 0 because d_k > 1.
    audit.X4 = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
        const Integer& v = audit.fractions[i];
        if (v.is_zero()) continue;
        for (std::uint64_t j = 1; j < k; ++j) {
            const std::uint64_t exponent = (n + i) * j;
            if (!floor_pow2_precondition(exponent, d, k)) {
                ++audit.fraction_terms_deferred;
                continue;
            }
            const Pow2Fraction piece = floor_pow2_over(exponent, d, k);
            level.add(piece.power, v * piece.copies, Stage::FractionX4);
            audit.X4 += v * piece.copies * piece.power.value();
            ++audit.fraction_terms_used;
        }
    }
    audit.X3 = audit.X2 - audit.X4;
    audit.tail = audit.X3 + audit.Z;
    if (audit.X3 < 0) throw InternalBoundViolation("decompose: X_3 is negative");
    if (audit.tail % gcd_ != 0) throw InternalBoundViolation("decompose: tail is not a multiple of E_k");
    if (audit.X1 + audit.X4 + audit.X3 + audit.Z != value)
        throw InternalBoundViolation("decompose: N != X_1 + X_4 + X_3 + Z");
    out.append(level);
    return audit;
}

bool Decomposer::try_pipeline(const Integer& value, unsigned level, Decomposition& result) const {
    const Integer X = value - (table_->frobenius() + 1) * gcd_;
    const std::uint64_t n = choose_n(X);
    if (n == 0) return false;
    std::vector<std::uint64_t> candidates{n};
    if (n > 1) candidates.push_back(n - 1);
    candidates.push_back(n + 1);
    for (std::uint64_t candidate : candidates) {
        PowerMultiset part;
        auto audit = run_level(value, candidate, part);
        if (!audit) {
            ++result.rejected_attempts;
            continue;
        }
        result.terms.append(part);
        const Integer tail = audit->tail;
        result.levels.push_back(std::move(*audit));
        decompose_tail(tail, level + 1, result);
        return true;
    }
    return false;
}

void Decomposer::decompose_tail(const Integer& value, unsigned level, Decomposition& result) const {
    if (level < config_.max_levels && try_pipeline(value, level, result)) return;
    result.terms.append(represent(value, *table_, Stage::Tail));
}

PowerMultiset Decomposer::dp_fallback(const Integer& value) const {
    const auto v = value.convert_to<std::uint64_t>();
    std::shared_ptr<const RepresentationTable> dp;
    {
        std::lock_guard lock(dp_mutex_);
        if (!dp_ || dp_->limit() < v) {
            const std::uint64_t grown = dp_ ? std::min(config_.dp_limit, std::max(v, 2 * dp_->limit())) : v;
            dp_ = std::make_shared<const RepresentationTable>(k_, std::max<std::uint64_t>(grown, 1));
        }
        dp = dp_;
    }
    auto terms = dp->witness(v);
    if (!terms) throw NotRepresentable("decompose: " + value.str() + " has no representation");
    PowerMultiset out;
    for (std::uint64_t s : *terms) out.add(*recognize(Integer(s), k_), 1, Stage::Fallback);
    return out;
}

Decomposition Decomposer::decompose(const Integer& value) const {
    if (value < 0) throw DomainError("decompose: N must be non-negative");
    Decomposition result;
    result.N = value;
    result.k = k_;
    if (value % gcd_ != 0)
        throw NotMultipleOfGcd("decompose: " + value.str() + " is not a multiple of E_" + std::to_string(k_) +
                               " = " + std::to_string(gcd_));
    if (k_ == 1) {
        // Every positive integer is its own binary 1st power.
        if (value > 0) result.terms.add(BlockPower{2, 1, bit_length(value), value}, 1, Stage::Tail);
        result.method = "trivial";
    } else if (value <= table_->frobenius() * gcd_) {
        if (!table_->representable(value))
            throw BelowFrobeniusRange("decompose: " + value.str() + " is not a sum of binary k'th powers for k = " +
                                      std::to_string(k_) + " (F_" + std::to_string(k_) + " = " +
                                      table_->frobenius().str() + ")");
        if (value <= config_.dp_limit) {
            result.terms = dp_fallback(value);
            result.method = "fallback";
        } else {
            result.terms = represent(value, *table_, Stage::Tail);
            result.method = "table";
        }
    } else if (try_pipeline(value, 0, result)) {
        result.method = "pipeline";
    } else if (value <= config_.dp_limit) {
        result.terms = dp_fallback(value);
        result.method = "fallback";
    } else {
        result.terms = represent(value, *table_, Stage::Tail);
        result.method = "table";
    }

    const VerificationResult check = verify_decomposition(value, k_, result.terms);
    if (!check.ok) throw InternalBoundViolation("decompose: certificate failed verification: " + check.reason);
    return result;
}

Decomposition decompose(const Integer& value, std::uint64_t k) {
    static std::mutex mutex;
    static std::map<std::uint64_t, std::unique_ptr<const Decomposer>> cache;
    const Decomposer* decomposer;
    {
        std::lock_guard lock(mutex);
        auto& slot = cache[k];
        if (!slot) slot = std::make_unique<const Decomposer>(k);
        decomposer = slot.get();
    }
    return decomposer->decompose(value);
}

VerificationResult verify_decomposition(const Integer& N, std::uint64_t k, const PowerMultiset& terms) {
    if (k == 0) return {false, "k must be >= 1"};
    if (N < 0) return {false, "N is negative"};
    const std::uint64_t e = gcd_of_powers(2, k);
    if (N % e != 0) return {false, "N is not a multiple of E_k = " + std::to_string(e)};
    Integer sum = 0;
    for (const auto& t : terms.terms()) {
        const BlockPower& p = t.power;
        if (p.base != 2 || p.k != k) return {false, "term " + to_string(p) + " has the wrong base or k"};
        if (t.copies < 1) return {false, "term " + to_string(p) + " has non-positive multiplicity"};
        if (!p.well_formed()) return {false, "term " + to_string(p) + " is not a canonical block"};
        const Integer value = p.a * c_k(k, p.n);
        const auto back = recognize(value, k);
        if (!back || *back != p) return {false, "value " + value.str() + " is not recognized as " + to_string(p)};
        sum += t.copies * value;
    }
    if (sum != N) return {false, "terms sum to " + sum.str() + ", expected " + N.str()};
    return {true, {}};
}

}  // namespace binpow

#include "binpow/repr_core.hpp"

#include "binpow/errors.hpp"

namespace binpow {

Integer c_kb(std::uint64_t base, std::uint64_t k, std::uint64_t n) {
    if (base < 2) throw DomainError("c_k^b(n): base must be >= 2");
    if (k == 0) throw DomainError("c_k^b(n): k must be >= 1");
    if (n == 0) throw DomainError("c_k^b(n): block length n must be >= 1");
    const Integer step = pow_int(Integer(base), n);
    Integer sum = 0;
    Integer term = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        sum += term;
        term *= step;
    }
    return sum;
}

bool BlockPower::well_formed() const {
    if (base < 2 || k == 0 || n == 0) return false;
    const Integer low = pow_int(Integer(base), n - 1);
    return a >= low && a < low * base;
}

std::string to_string(const BlockPower& p) {
    return "BlockPower(b=" + std::to_string(p.base) + ", k=" + std::to_string(p.k) +
           ", n=" + std::to_string(p.n) + ", a=" + p.a.str() + ")";
}

std::optional<BlockPower> recognize(const Integer& value, std::uint64_t k, std::uint64_t base) {
    if (base < 2 || k == 0) throw DomainError("recognize: need base >= 2 and k >= 1");
    if (value <= 0) return std::nullopt;
    const std::uint64_t digits = digit_count(value, base);
    if (digits % k != 0) return std::nullopt;
    const std::uint64_t n = digits / k;
    const Integer c = c_kb(base, k, n);
    Integer a;
    Integer rem;
    boost::multiprecision::divide_qr(value, c, a, rem);
    if (!rem.is_zero()) return std::nullopt;
    // value has exactly kn digits, so b^{n-1} <= a < b^n follows from the division.
    BlockPower p{base, k, n, a};
    if (!p.well_formed()) return std::nullopt;
    return p;
}

bool is_member(const Integer& value, std::uint64_t k, std::uint64_t base) {
    return value.is_zero() || recognize(value, k, base).has_value();
}

Integer floor_member(const Integer& bound, std::uint64_t k, std::uint64_t base) {
    if (base < 2 || k == 0) throw DomainError("floor_member: need base >= 2 and k >= 1");
    if (bound <= 0) return 0;
    const std::uint64_t digits = digit_count(bound, base);
    std::uint64_t n = digits / k;
    if (digits % k == 0) {
        const Integer c = c_kb(base, k, n);
        const Integer a = bound / c;
        if (a >= pow_int(Integer(base), n - 1)) return a * c;
        --n;
    }
    if (n == 0) return 0;
    // Largest element of block length n is (b^n - 1) c(n) = b^{kn} - 1.
    return pow_int(Integer(base), k * n) - 1;
}

PowerSetView::PowerSetView(std::uint64_t base, std::uint64_t k, Integer limit)
    : base_(base), k_(k), limit_(std::move(limit)) {
    if (base < 2 || k == 0) throw DomainError("enumerate: need base >= 2 and k >= 1");
    if (limit_ < 0) throw DomainError("enumerate: limit must be non-negative");
}

PowerSetView::iterator::iterator(const PowerSetView* view) : view_(view), done_(false) {
    current_ = 0;
    n_ = 0;
}

void PowerSetView::iterator::enter_length(std::uint64_t n) {
    n_ = n;
    a_ = pow_int(Integer(view_->base_), n - 1);
    a_end_ = a_ * view_->base_;
    step_ = c_kb(view_->base_, view_->k_, n);
    current_ = a_ * step_;
}

PowerSetView::iterator& PowerSetView::iterator::operator++() {
    if (done_) return *this;
    if (n_ == 0) {
        enter_length(1);
    } else {
        ++a_;
        if (a_ == a_end_) {
            enter_length(n_ + 1);
        } else {
            current_ += step_;
        }
    }
    if (current_ > view_->limit_) done_ = true;
    return *this;
}

std::vector<Integer> PowerSetView::to_vector() const {
    std::vector<Integer> out;
    for (auto it = begin(); it != end(); ++it) out.push_back(*it);
    return out;
}

std::vector<std::uint64_t> binary_powers_u64(std::uint64_t k, std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    const PowerSetView view = enumerate(2, k, Integer(limit));
    for (const Integer& s : view) {
        if (!s.is_zero()) out.push_back(s.convert_to<std::uint64_t>());
    }
    return out;
}

}  // namespace binpow

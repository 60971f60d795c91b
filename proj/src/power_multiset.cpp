#include "binpow/power_multiset.hpp"

#include <string>

#include "binpow/errors.hpp"

namespace binpow {

std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::SplitX1: return "SPLIT_X1";
        case Stage::FractionX4: return "FRACTION_X4";
        case Stage::Tail: return "TAIL";
        case Stage::Fallback: return "FALLBACK";
    }
    return "UNKNOWN";
}

Stage stage_from_string(std::string_view text) {
    for (Stage s : {Stage::SplitX1, Stage::FractionX4, Stage::Tail, Stage::Fallback}) {
        if (to_string(s) == text) return s;
    }
    throw DomainError("unknown stage tag '" + std::string(text) + "'");
}

void PowerMultiset::add(const BlockPower& power, const Integer& copies, Stage stage) {
    if (copies <= 0) return;
    for (auto& t : terms_) {
        if (t.stage == stage && t.power == power) {
            t.copies += copies;
            return;
        }
    }
    terms_.push_back({power, copies, stage});
}

void PowerMultiset::append(const PowerMultiset& other, const Integer& times) {
    for (const auto& t : other.terms_) add(t.power, t.copies * times, t.stage);
}

Integer PowerMultiset::total() const {
    Integer sum = 0;
    for (const auto& t : terms_) sum += t.copies * t.power.value();
    return sum;
}

Integer PowerMultiset::count() const {
    Integer sum = 0;
    for (const auto& t : terms_) sum += t.copies;
    return sum;
}

}  // namespace binpow

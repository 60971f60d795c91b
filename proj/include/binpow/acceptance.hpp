#pragma once

// End-to-end checks shared by `binpow selftest` and the acceptance test binary.
// Each check recomputes its expectation independently of the code under test
// where one exists (brute force, direct gcd, cofactor products).

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace binpow::acceptance {

enum class Level {
    Quick,  // everything except the census
    Full,
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024;

struct Options {
    Level level = Level::Full;
    std::uint64_t seed = kDefaultSeed;
    unsigned workers = 0;  // census threads; 0 = hardware concurrency
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    bool skipped = false;  // counts as passed
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 9;

CriterionResult run_criterion(int id, const Options& options);

/// Runs every criterion in order; `on_result` sees each one as it finishes.
std::vector<CriterionResult> run_all(const Options& options, const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 decompose-random-multiples (1.2 s): detail"
std::string format(const CriterionResult& r);

}  // namespace binpow::acceptance

// One line per acceptance criterion; exit status is nonzero if any fails.
// Usage: acceptance_test [--quick] [--seed S] [--workers W]

#include <cstdlib>
#include <iostream>
#include <string>

#include "binpow/acceptance.hpp"

int main(int argc, char** argv) {
    binpow::acceptance::Options opt;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quick") {
            opt.level = binpow::acceptance::Level::Quick;
        } else if (arg == "--seed" && i + 1 < argc) {
            opt.seed = std::strtoull(argv[++i], nullptr, 0);
        } else if (arg == "--workers" && i + 1 < argc) {
            opt.workers = static_cast<unsigned>(std::strtoul(argv[++i], nullptr, 10));
        } else {
            std::cerr << "usage: acceptance_test [--quick] [--seed S] [--workers W]\n";
            return 64;
        }
    }
    int failed = 0;
    binpow::acceptance::run_all(opt, [&](const binpow::acceptance::CriterionResult& r) {
        std::cout << binpow::acceptance::format(r) << std::endl;
        if (!r.passed && !r.skipped) ++failed;
    });
    std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << '\n';
    return failed ? 1 : 0;
}

// binpow: command-line front end for the binary k'th power library.
//
// Exit status: 0 success, 1 domain error (bad input, not representable),
// 2 resource error (limit or memory budget), 64 usage error, 70 internal error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "binpow/acceptance.hpp"
#include "binpow/certificate.hpp"
#include "binpow/decomposer.hpp"
#include "binpow/density.hpp"
#include "binpow/errors.hpp"
#include "binpow/frobenius.hpp"
#include "binpow/gcd_theory.hpp"
#include "binpow/repr_core.hpp"
#include "binpow/search_verify.hpp"
#include "binpow/vandermonde.hpp"

namespace {

using binpow::Integer;
using nlohmann::json;

constexpr int kExitDomain = 1;
constexpr int kExitResource = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

enum class Format { Text, Json, Csv };

std::uint64_t env_u64(const char* name, std::uint64_t fallback) {
    const char* raw = std::getenv(name);
    if (!raw || !*raw) return fallback;
    return binpow::to_u64(binpow::parse_natural(raw), name);
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

std::string render_terms(const binpow::PowerMultiset& terms) {
    std::string out;
    for (const auto& t : terms.terms()) {
        if (!out.empty()) out += " + ";
        if (t.copies != 1) out += t.copies.str() + "*";
        out += t.power.value().str();
    }
    return out.empty() ? "0" : out;
}

struct Args {
    std::uint64_t base = 2;
    std::uint64_t k = 2;
    std::string limit = "1000";
    bool as_json = false;
    bool as_csv = false;
    bool chain = false;
    std::uint64_t depth = 0;
    std::string number;
    std::string file;
    std::string witness;
    unsigned cap = 9;
    std::string dump;
    unsigned workers = 0;
    std::uint64_t n = 1;
    std::uint64_t g = 1;
    std::uint64_t empirical_k = 0;
    std::string level = "quick";
    std::uint64_t seed = binpow::acceptance::kDefaultSeed;
    std::uint64_t dp_limit = 0;

    Format format() const { return as_json ? Format::Json : as_csv ? Format::Csv : Format::Text; }
};

int run_enumerate(const Args& a) {
    const Integer limit = binpow::parse_natural(a.limit);
    const auto view = binpow::enumerate(a.base, a.k, limit);
    switch (a.format()) {
    case Format::Text:
        for (const Integer& s : view) std::cout << s << '\n';
        break;
    case Format::Csv:
        std::cout << "value,n,a\n";
        for (const Integer& s : view) {
            const auto p = binpow::recognize(s, a.k, a.base);
            std::cout << s << ',' << (p ? p->n : 0) << ',' << (p ? p->a : Integer(0)) << '\n';
        }
        break;
    case Format::Json: {
        json values = json::array();
        for (const Integer& s : view) values.push_back(s.str());
        print_json({{"base", a.base}, {"k", a.k}, {"limit", limit.str()}, {"values", values}});
        break;
    }
    }
    return 0;
}

int run_gcd(const Args& a) {
    if (a.chain) {
        const auto chain = binpow::verify_gcd_chain(a.base, a.k, a.depth);
        print_json(binpow::to_json(chain));
        return chain.holds() ? 0 : kExitDomain;
    }
    std::cout << binpow::gcd_of_powers(a.base, a.k) << '\n';
    return 0;
}

int run_vander(const Args& a) {
    const auto sys = binpow::build_vander<Integer>(static_cast<Eigen::Index>(a.k));
    const json j = binpow::to_json(sys);
    if (a.as_json) {
        print_json(j);
    } else {
        std::cout << "d_k = " << sys.det << '\n'
                  << "ell_k = " << j["ell"].get<std::string>() << " ~ " << j["ell_decimal"].get<std::string>() << '\n'
                  << "det equals product formula: " << j["det_matches_product"] << '\n'
                  << "M * adj = d_k * I: " << j["inverse_identity"] << '\n'
                  << "d_k < 2^(k^3/3): " << j["det_below_2_pow_k3_over_3"] << '\n'
                  << "ell_k < 34: " << j["ell_below_34"] << '\n';
    }
    return 0;
}

int run_decompose(const Args& a) {
    if (a.base != 2) throw binpow::DomainError("decompose: only base 2 is supported");
    binpow::DecomposerConfig config;
    config.dp_limit = a.dp_limit ? a.dp_limit : env_u64("BINPOW_DP_LIMIT", binpow::kDefaultDpLimit);
    const binpow::Decomposer dec(a.k, config);
    const auto d = dec.decompose(binpow::parse_natural(a.number));
    print_json(binpow::to_json(d));
    return 0;
}

int run_verify(const Args& a) {
    std::string text;
    if (a.file == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(a.file);
        if (!in) throw binpow::DomainError("verify: cannot open " + a.file);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    const json cert = json::parse(text, nullptr, false);
    if (cert.is_discarded()) throw binpow::DomainError("verify: " + a.file + " is not valid JSON");
    const auto result = binpow::verify_certificate(cert);
    if (result.ok) {
        std::cout << "ok: " << cert.value("count", std::string("?")) << " terms sum to N = "
                  << cert.value("N", std::string("?")) << '\n';
        return 0;
    }
    std::cout << "rejected: " << result.reason << '\n';
    return kExitDomain;
}

int run_frobenius(const Args& a) {
    const auto& table = binpow::cached_semigroup_table(a.k);
    if (a.witness.empty()) {
        if (a.as_json) {
            print_json({{"k", a.k},
                        {"E", table.gcd()},
                        {"modulus", table.modulus()},
                        {"frobenius", table.frobenius().str()},
                        {"generators", table.generators().size()}});
        } else {
            std::cout << table.frobenius() << '\n';
        }
        return 0;
    }
    const Integer v = binpow::parse_natural(a.witness);
    const auto terms = binpow::represent(v, table);
    if (a.as_json) {
        json list = json::array();
        for (const auto& t : terms.terms())
            list.push_back({{"n", t.power.n}, {"a", t.power.a.str()}, {"value", t.power.value().str()},
                            {"copies", t.copies.str()}});
        print_json({{"N", v.str()}, {"k", a.k}, {"count", terms.count().str()}, {"terms", list}});
    } else {
        std::cout << v << " = " << render_terms(terms) << '\n';
    }
    return 0;
}

int run_census(const Args& a) {
    binpow::CensusConfig config;
    config.workers = a.workers;
    config.memory_budget = env_u64("BINPOW_MEMORY_BUDGET", config.memory_budget);
    config.keep_exceptions = !a.dump.empty() || a.as_json;
    const auto c = binpow::census(a.k, a.cap, binpow::to_u64(binpow::parse_natural(a.limit), "limit"), config);
    if (!a.dump.empty()) {
        std::ofstream out(a.dump);
        if (!out) throw binpow::DomainError("census: cannot write " + a.dump);
        out << "exception\n";
        for (std::uint64_t e : c.exceptions) out << e << '\n';
    }
    if (a.as_json) {
        print_json(binpow::to_json(c, true));
    } else {
        std::cout << "exceptions: " << c.exception_count << '\n'
                  << "max exception: " << (c.max_exception ? std::to_string(*c.max_exception) : "none") << '\n';
    }
    return 0;
}

int run_sumset(const Args& a) {
    const auto r = binpow::sumset_unique(a.k, a.n, env_u64("BINPOW_MEMORY_BUDGET", std::uint64_t{1} << 26) / 8);
    if (a.as_json) {
        print_json(binpow::to_json(r));
    } else {
        std::cout << "expected " << r.expected << ", observed " << r.observed << ": "
                  << (r.unique() ? "unique" : "collision") << '\n';
    }
    return 0;
}

int run_density(const Args& a) {
    const auto r = binpow::density_partial(a.g, a.base, a.depth, a.empirical_k, a.workers ? a.workers : 1);
    if (a.as_json) {
        print_json(binpow::to_json(r));
        return 0;
    }
    std::cout << "partial sum (D=" << r.depth << "): " << binpow::to_decimal_string(r.partial) << '\n';
    for (const auto& [d, v] : r.checkpoints) std::cout << "  D=" << d << ": " << binpow::to_decimal_string(v) << '\n';
    std::cout << "nonempty: " << (r.criterion_nonempty ? "yes" : "no") << '\n';
    if (r.empirical_K)
        std::cout << "empirical (K=" << r.empirical_K << "): " << r.empirical_count << " -> " << r.empirical_density()
                  << '\n';
    return 0;
}

int run_selftest(const Args& a) {
    binpow::acceptance::Options opt;
    opt.level = a.level == "full" ? binpow::acceptance::Level::Full : binpow::acceptance::Level::Quick;
    opt.seed = a.seed;
    opt.workers = a.workers;
    bool all = true;
    binpow::acceptance::run_all(opt, [&](const binpow::acceptance::CriterionResult& r) {
        std::cout << binpow::acceptance::format(r) << std::endl;
        all = all && (r.passed || r.skipped);
    });
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sums of binary k'th powers: decomposition, certificates and numeric checks"};
    app.require_subcommand(1);
    Args a;

    auto add_format = [&](CLI::App* sub, bool csv) {
        auto* j = sub->add_flag("--json", a.as_json, "JSON output");
        if (csv) sub->add_flag("--csv", a.as_csv, "CSV output with a header row")->excludes(j);
    };

    auto* enumerate = app.add_subcommand("enumerate", "List binary k'th powers up to a limit");
    enumerate->add_option("--base", a.base)->check(CLI::Range(2, 1 << 16));
    enumerate->add_option("--k", a.k)->required()->check(CLI::PositiveNumber);
    enumerate->add_option("--limit", a.limit)->required();
    add_format(enumerate, true);

    auto* gcd = app.add_subcommand("gcd", "gcd of the binary k'th powers");
    gcd->add_option("--base", a.base)->check(CLI::Range(2, 1 << 16));
    gcd->add_option("--k", a.k)->required()->check(CLI::PositiveNumber);
    gcd->add_flag("--chain", a.chain, "Print every stage of the gcd chain as JSON");
    gcd->add_option("--depth", a.depth, "Block lengths sampled by --chain (default 2k)");

    auto* vander = app.add_subcommand("vander", "Determinant, adjugate bound and checks for the change-of-basis matrix");
    vander->add_option("--k", a.k)->required()->check(CLI::Range(1, 40));
    add_format(vander, false);

    auto* decompose = app.add_subcommand("decompose", "Write N as a sum of binary k'th powers (JSON certificate)");
    decompose->add_option("--k", a.k)->required()->check(CLI::PositiveNumber);
    decompose->add_option("--base", a.base)->check(CLI::Range(2, 2));
    decompose->add_option("--dp-limit", a.dp_limit, "Largest N handed to the exact DP fallback");
    decompose->add_option("N", a.number)->required();

    auto* verify = app.add_subcommand("verify", "Re-check a certificate file ('-' reads stdin)");
    verify->add_option("file", a.file)->required();

    auto* frobenius = app.add_subcommand("frobenius", "Frobenius number of the scaled k'th powers");
    frobenius->add_option("--k", a.k)->required()->check(CLI::PositiveNumber);
    frobenius->add_option("--witness", a.witness, "Also write this value as a sum of powers");
    add_format(frobenius, false);

    auto* census = app.add_subcommand("census", "Values not expressible with at most cap powers");
    census->add_option("--k", a.k)->required()->check(CLI::PositiveNumber);
    census->add_option("--cap", a.cap)->required()->check(CLI::Range(1, 64));
    census->add_option("--limit", a.limit)->required();
    census->add_option("--dump", a.dump, "CSV file receiving every exception");
    census->add_option("--workers", a.workers, "Worker threads (default: hardware concurrency)");
    add_format(census, false);

    auto* sumset = app.add_subcommand("sumset", "Check that consecutive block lengths give distinct sums");
    sumset->add_option("--k", a.k)->required()->check(CLI::PositiveNumber);
    sumset->add_option("--n", a.n)->required()->check(CLI::PositiveNumber);
    add_format(sumset, false);

    auto* density = app.add_subcommand("density", "Density of k with a given gcd");
    density->add_option("--base", a.base)->check(CLI::Range(2, 1 << 16));
    density->add_option("--g", a.g)->required()->check(CLI::PositiveNumber);
    density->add_option("--depth", a.depth)->required()->check(CLI::Range(1, 10'000'000));
    density->add_option("--empirical-k", a.empirical_k, "Also count k <= K directly");
    density->add_option("--workers", a.workers);
    add_format(density, false);

    auto* selftest = app.add_subcommand("selftest", "Rerun the acceptance checks");
    selftest->add_option("level", a.level)->check(CLI::IsMember({"quick", "full"}));
    selftest->add_option("--seed", a.seed, "Seed for the randomized checks");
    selftest->add_option("--workers", a.workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*enumerate) return run_enumerate(a);
        if (*gcd) return run_gcd(a);
        if (*vander) return run_vander(a);
        if (*decompose) return run_decompose(a);
        if (*verify) return run_verify(a);
        if (*frobenius) return run_frobenius(a);
        if (*census) return run_census(a);
        if (*sumset) return run_sumset(a);
        if (*density) return run_density(a);
        if (*selftest) return run_selftest(a);
    } catch (const binpow::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const binpow::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}

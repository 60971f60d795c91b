#include "doctest.h"

#include "binpow/certificate.hpp"

using namespace binpow;
using nlohmann::json;

TEST_CASE("decomposition certificates round-trip through text") {
    for (std::uint64_t k = 1; k <= 6; ++k) {
        const Integer N = (pow_int(Integer(10), 20) + 7) / gcd_of_powers(2, k) * gcd_of_powers(2, k);
        const json cert = to_json(decompose(N, k));
        CHECK(cert["schema"] == kCertificateSchema);
        CHECK(cert["N"] == N.str());
        const json reread = json::parse(cert.dump());
        const auto v = verify_certificate(reread);
        CAPTURE(v.reason);
        CHECK(v.ok);
    }
}

TEST_CASE("tampered certificates are rejected") {
    const json good = to_json(decompose(Integer(1000003), 3));
    REQUIRE(verify_certificate(good).ok);

    json wrong_n = good;
    wrong_n["N"] = "1000004";
    CHECK_FALSE(verify_certificate(wrong_n).ok);

    json wrong_value = good;
    wrong_value["terms"][0]["value"] = "1";
    CHECK_FALSE(verify_certificate(wrong_value).ok);

    json bad_block = good;
    bad_block["terms"][0]["a"] = "1";
    bad_block["terms"][0]["n"] = 3;
    CHECK_FALSE(verify_certificate(bad_block).ok);

    json wrong_count = good;
    wrong_count["count"] = "99999";
    CHECK_FALSE(verify_certificate(wrong_count).ok);

    CHECK_FALSE(verify_certificate(json::array()).ok);
    CHECK_FALSE(verify_certificate(json{{"N", "-5"}, {"k", 2}, {"terms", json::array()}}).ok);
}

TEST_CASE("hand-written minimal certificate") {
    const json cert = json::parse(R"({"N": "3549", "k": 3, "terms": [{"n": 4, "a": "13", "value": "3549"}]})");
    CHECK(verify_certificate(cert).ok);
}

TEST_CASE("big numbers are strings") {
    const json cert = to_json(decompose(pow2(200), 2));
    CHECK(cert["N"].is_string());
    for (const auto& t : cert["terms"]) {
        CHECK(t["a"].is_string());
        CHECK(t["value"].is_string());
        CHECK(t["copies"].is_string());
    }
    for (const auto& s : cert["stages"]) CHECK(s["X"].is_string());
}

TEST_CASE("other renderings carry their checks") {
    const json v = to_json(build_vander<Integer>(4));
    CHECK(v["det"] == "1008");
    CHECK(v["ell"] == "11/3");
    CHECK(v["inverse_identity"] == true);

    const json g = to_json(verify_gcd_chain(2, 6));
    CHECK(g["E"] == "3");
    CHECK(g["holds"] == true);

    const json s = to_json(sumset_unique(2, 3));
    CHECK(s["observed"] == 32);
    CHECK(s["collision"].is_null());

    const json d = to_json(density_partial(1, 2, 50, 100));
    CHECK(d["checkpoints"].size() == 3);
}

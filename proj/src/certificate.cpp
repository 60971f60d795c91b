#include "binpow/certificate.hpp"

#include "binpow/errors.hpp"

namespace binpow {

using nlohmann::json;

namespace {

json strings(const std::vector<Integer>& values) {
    json out = json::array();
    for (const auto& v : values) out.push_back(v.str());
    return out;
}

std::string fraction(const Rational& q) {
    return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

Integer natural_field(const json& j, const char* key) {
    if (!j.contains(key)) throw DomainError(std::string("certificate: missing field '") + key + "'");
    const json& v = j.at(key);
    if (v.is_string()) return parse_natural(v.get<std::string>());
    if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
    throw DomainError(std::string("certificate: field '") + key + "' must be a decimal string");
}

}  // namespace

json to_json(const PipelineAudit& a) {
    return json{{"target", a.target.str()},
                {"Z", a.Z.str()},
                {"X", a.X.str()},
                {"n", a.n},
                {"Q", a.Q.str()},
                {"R", a.R.str()},
                {"Y", a.Y.str()},
                {"r", strings(a.r)},
                {"e", strings(a.e)},
                {"digits", strings(a.digits)},
                {"b_numerators", strings(a.b_numerators)},
                {"denominator", a.denominator.str()},
                {"floors", strings(a.floors)},
                {"fractions", strings(a.fractions)},
                {"X1", a.X1.str()},
                {"X2", a.X2.str()},
                {"X3", a.X3.str()},
                {"X4", a.X4.str()},
                {"tail", a.tail.str()},
                {"lower_bound_holds", a.lower_bound_holds},
                {"max_upper_ratio", fraction(a.max_upper_ratio)},
                {"fraction_terms_used", a.fraction_terms_used},
                {"fraction_terms_deferred", a.fraction_terms_deferred}};
}

json to_json(const Decomposition& d) {
    json terms = json::array();
    for (const auto& t : d.terms.terms()) {
        terms.push_back({{"n", t.power.n},
                         {"a", t.power.a.str()},
                         {"value", t.power.value().str()},
                         {"copies", t.copies.str()},
                         {"stage", std::string(to_string(t.stage))}});
    }
    json stages = json::array();
    for (const auto& level : d.levels) stages.push_back(to_json(level));
    return json{{"schema", kCertificateSchema},
                {"N", d.N.str()},
                {"base", d.base},
                {"k", d.k},
                {"method", d.method},
                {"count", d.terms.count().str()},
                {"terms", terms},
                {"stages", stages},
                {"rejected_attempts", d.rejected_attempts}};
}

json to_json(const GcdChain& c) {
    json out{{"base", c.base}, {"k", c.k},         {"depth", c.depth},     {"A", c.A.str()}, {"B", c.B.str()},
             {"C", c.C.str()}, {"D", c.D.str()}, {"E", c.E.str()}, {"holds", c.holds()}};
    out["counterexample"] = c.counterexample ? json(*c.counterexample) : json(nullptr);
    return out;
}

json to_json(const VanderSystem<Integer>& sys) {
    const Rational l = ell(sys);
    json rows = json::array();
    for (Eigen::Index i = 0; i < sys.k; ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < sys.k; ++j) row.push_back(sys.adj(i, j).str());
        rows.push_back(row);
    }
    return json{{"k", sys.k},
                {"det", sys.det.str()},
                {"det_matches_product", sys.det == vandermonde_det_product<Integer>(sys.k)},
                {"ell", fraction(l)},
                {"ell_decimal", to_decimal_string(l, 12)},
                {"adjugate", rows},
                {"inverse_identity", sys.inverse_identity_holds()},
                {"det_below_2_pow_k3_over_3", det_bound_holds(sys)},
                {"ell_below_34", ell_bound_holds(sys)},
                {"ell_below_5_195", l < Rational(5195, 1000)}};
}

json to_json(const ExceptionCensus& c, bool with_exceptions) {
    json out{{"k", c.k},
             {"cap", c.cap},
             {"limit", c.limit},
             {"exception_count", c.exception_count},
             {"max_exception", c.max_exception ? json(*c.max_exception) : json(nullptr)},
             {"layer_sizes", c.layer_sizes}};
    if (with_exceptions) out["exceptions"] = c.exceptions;
    return out;
}

json to_json(const SumsetReport& r) {
    json out{{"k", r.k}, {"n", r.n}, {"expected", r.expected.str()}, {"observed", r.observed}, {"unique", r.unique()}};
    if (r.collision) {
        out["collision"] = {r.collision->first, r.collision->second};
    } else {
        out["collision"] = nullptr;
    }
    return out;
}

json to_json(const DensityReport& r) {
    json checkpoints = json::array();
    for (const auto& [depth, value] : r.checkpoints)
        checkpoints.push_back({{"depth", depth}, {"partial", fraction(value)}, {"decimal", to_decimal_string(value)}});
    return json{{"base", r.base},
                {"g", r.g},
                {"depth", r.depth},
                {"terms", r.terms},
                {"partial", fraction(r.partial)},
                {"partial_decimal", to_decimal_string(r.partial)},
                {"checkpoints", checkpoints},
                {"nonempty", r.criterion_nonempty},
                {"empirical_K", r.empirical_K},
                {"empirical_count", r.empirical_count},
                {"empirical_density", r.empirical_density()}};
}

VerificationResult verify_certificate(const json& cert) {
    try {
        if (!cert.is_object()) return {false, "certificate must be a JSON object"};
        const Integer N = natural_field(cert, "N");
        const std::uint64_t k = to_u64(natural_field(cert, "k"), "k");
        if (cert.contains("base") && natural_field(cert, "base") != 2) return {false, "only base 2 is supported"};
        if (!cert.contains("terms") || !cert.at("terms").is_array()) return {false, "missing 'terms' array"};
        PowerMultiset terms;
        Integer count = 0;
        for (const json& t : cert.at("terms")) {
            const std::uint64_t n = to_u64(natural_field(t, "n"), "n");
            const Integer a = natural_field(t, "a");
            const Integer copies = t.contains("copies") ? natural_field(t, "copies") : Integer(1);
            const BlockPower power{2, k, n, a};
            if (n == 0 || !power.well_formed())
                return {false, "term n=" + std::to_string(n) + ", a=" + a.str() + " is not a canonical block"};
            if (t.contains("value") && natural_field(t, "value") != power.value())
                return {false, "stored value " + natural_field(t, "value").str() + " != a*c_k(n) for " +
                                   to_string(power)};
            const Stage stage = t.contains("stage") ? stage_from_string(t.at("stage").get<std::string>()) : Stage::Tail;
            terms.add(power, copies, stage);
            count += copies;
        }
        if (cert.contains("count") && natural_field(cert, "count") != count)
            return {false, "stored count " + natural_field(cert, "count").str() + " != " + count.str()};
        return verify_decomposition(N, k, terms);
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
}

}  // namespace binpow

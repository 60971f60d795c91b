#pragma once

// JSON renderings. Big numbers are always decimal strings; field names are fixed.

#include "json.hpp"

#include "binpow/decomposer.hpp"
#include "binpow/density.hpp"
#include "binpow/gcd_theory.hpp"
#include "binpow/search_verify.hpp"
#include "binpow/vandermonde.hpp"

namespace binpow {

inline constexpr const char* kCertificateSchema = "binpow.certificate/1";

nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const PipelineAudit& audit);
nlohmann::json to_json(const GcdChain& chain);
nlohmann::json to_json(const VanderSystem<Integer>& sys);
nlohmann::json to_json(const ExceptionCensus& census, bool with_exceptions = false);
nlohmann::json to_json(const SumsetReport& report);
nlohmann::json to_json(const DensityReport& report);

/// Reads a certificate back and re-checks it from scratch: the stored value of
/// each term must equal a * c_k(n), and verify_decomposition must accept.
VerificationResult verify_certificate(const nlohmann::json& certificate);

}  // namespace binpow

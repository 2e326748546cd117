#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "isospec/forms.hpp"
#include "isospec/jmaps.hpp"

namespace isospec {

inline constexpr const char* kVersion = "1.0.0";

enum class CheckStatus { Pass, Fail, Skipped };

std::string check_status_name(CheckStatus s);

// One verified hypothesis. The contract is: status == Pass exactly when
// residual <= tolerance (skipped checks carry residual 0). When a check body
// throws, the residual is set to kErrorResidual and the message lands in
// notes, so the certificate stays well-formed.
struct CheckResult {
    std::string id;
    CheckStatus status = CheckStatus::Skipped;
    double residual = 0.0;
    double tolerance = 0.0;
    int samples = 0;
    std::uint64_t seed = 0;
    std::string notes;
};

inline constexpr double kErrorResidual = 9e99;

struct CertifyConfig {
    double t = 1.5707963267948966;      // pi/2
    double tprime = 0.7853981633974483; // pi/4
    int n = 4;                          // CP^n dimension; sphere is S^{2n+1}
    std::vector<DualWeight> mu = {{1, 0}, {0, 1}, {1, 1}, {2, -1}};
    int samples = 100;       // per randomized check
    std::uint64_t seed = 42;
    bool heatprobe = false;  // enable the Monte Carlo curvature probe
    int mc_samples = 20000;
    std::string dump_curvature; // CSV path for curvature samples, empty = off
};

// Throws ConfigError when a field is out of range.
void validate_config(const CertifyConfig& cfg);

CertifyConfig config_from_json(const nlohmann::json& j);

struct Certificate {
    std::string version = kVersion;
    std::string timestamp; // ISO 8601 UTC, the only run-dependent field
    CertifyConfig config;
    std::vector<CheckResult> checks;
    bool pass = false;
    std::string notes; // e.g. "pair not certified non-equivalent"
};

// Runs every check in a fixed order: family invariants, pair isospectrality
// and non-equivalence evidence, condition (I) per mu, the admissibility
// suite, metric identities, derivative oracles, the projective-space suite,
// and (when enabled) the heat probe. Check bodies never escape as
// exceptions; they become failed results.
Certificate run_certification(const CertifyConfig& cfg);

nlohmann::ordered_json certificate_to_json(const Certificate& cert);

// Writes the certificate JSON; returns the process exit code the caller
// should use (0 pass, 2 fail). Empty path writes nothing but still reports.
int emit_report(const Certificate& cert, const std::string& path);

} // namespace isospec

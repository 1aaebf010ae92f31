#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gssf {

enum class Status { Pass, Fail, HypothesisFails, Skipped };
std::string to_string(Status s);

struct SuiteConfig {
    std::vector<std::string> targets;  // empty: every catalog entry
    std::vector<std::string> checks;   // empty: every applicable check
    int points = 20;
    std::uint64_t seed = 42;
    double tolerance = 1e-7;
    std::string format = "text";
    std::optional<std::string> output;
    bool parallel = false;
};

struct CheckRecord {
    std::string check_id;
    std::string formula;
    std::string target;
    int samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    Status status = Status::Skipped;
    std::vector<std::string> notes;
};

struct VerificationReport {
    std::vector<CheckRecord> records;  // sorted by (target, check_id)
    SuiteConfig config;
    std::string version;

    std::map<std::string, int> summary() const;
    bool all_passed() const;  // no record with status fail
};

struct CheckInfo {
    std::string id;
    std::string formula;
    bool ambient = false;  // applies to ambient models, otherwise to immersions
};

const std::vector<CheckInfo>& check_catalog();
std::string artifact_version();
const std::string& report_schema();

/// Usage error for unknown targets or checks.
VerificationReport run_suite(const SuiteConfig& config);
std::string emit_report(const VerificationReport& report, const std::string& format);

}  // namespace gssf

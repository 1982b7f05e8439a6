#pragma once

#include "gkms/net.hpp"
#include "gkms/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gkms {

struct CheckRecord {
    std::string name;
    long samples = 0;
    double max_residual = 0.0;
    double scale = 1.0;
    bool pass = false;
    double seconds = 0.0;
};

struct Report {
    std::string artifact_version = kArtifactVersion;
    double tolerance = 1e-9;
    std::string scenario_echo;  // serialized config
    std::vector<CheckRecord> checks;
    std::vector<std::string> skipped;
    std::vector<std::string> notes;
    std::vector<ModulusDiscrepancy> modulus_discrepancy;

    bool all_pass() const;
    int exit_code() const { return all_pass() ? 0 : 1; }
};

/// UTF-8 JSON with residuals printed in scientific notation at 17
/// significant digits; parse() inverts emit() exactly.
std::string emit_report(const Report& report);
Report parse_report(const std::string& text);
void save_report(const Report& report, const std::string& path);

}  // namespace gkms

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace gimvi {

/// Default tolerance used by the randomized audits.
inline constexpr double kAuditTol = 1e-9;

/// One audited inequality: its worst observed slack (negative = violated by
/// that amount) and the number of trials below -tol.
struct AuditCheck {
    std::string name;
    double worst_slack = 0.0;
    int violations = 0;
    int trials = 0;
    bool asserted = true; // informational-only checks never fail the report
};

struct AuditReport {
    std::vector<AuditCheck> checks;
    double tol = kAuditTol;

    bool pass() const;
    nlohmann::json to_json() const;
};

/// One inequality of a theorem's condition set. For conditions of the form
/// "expr >= 0" the slack equals the lhs; strict conditions pass only when
/// the slack is positive.
struct FeasibilityCondition {
    std::string name;
    double lhs = 0.0;
    double slack = 0.0;
    bool pass = false;
};

struct FeasibilityReport {
    std::vector<FeasibilityCondition> conditions;
    bool verdict = false;

    nlohmann::json to_json() const;
};

} // namespace gimvi

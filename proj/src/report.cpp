#include "gimvi/report.hpp"

#include <nlohmann/json.hpp>

namespace gimvi {

bool AuditReport::pass() const {
    for (const auto& c : checks)
        if (c.asserted && c.worst_slack < -tol) return false;
    return true;
}

nlohmann::json AuditReport::to_json() const {
    nlohmann::json j;
    j["tol"] = tol;
    j["pass"] = pass();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name},
                               {"worst_slack", c.worst_slack},
                               {"violations", c.violations},
                               {"trials", c.trials},
                               {"asserted", c.asserted}});
    }
    return j;
}

nlohmann::json FeasibilityReport::to_json() const {
    nlohmann::json j;
    j["verdict"] = verdict;
    j["conditions"] = nlohmann::json::array();
    for (const auto& c : conditions) {
        j["conditions"].push_back(
            {{"name", c.name}, {"lhs", c.lhs}, {"slack", c.slack}, {"pass", c.pass}});
    }
    return j;
}

} // namespace gimvi

#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "gimvi/instance.hpp"

namespace gimvi {

/// Instance document: {dim, M, b, G, d, omega, h, gamma, constants} with
/// row-major matrices. Doubles round-trip exactly (shortest-representation
/// encoding covers 17 significant digits). Custom h is not serializable.
nlohmann::json instance_to_json(const ProblemInstance& inst);
ProblemInstance instance_from_json(const nlohmann::json& j);

void save_instance(const ProblemInstance& inst, const std::string& path);
ProblemInstance load_instance(const std::string& path);

nlohmann::json feasible_set_to_json(const FeasibleSet& omega);
FeasibleSet feasible_set_from_json(const nlohmann::json& j);

nlohmann::json hspec_to_json(const HSpec& h);
HSpec hspec_from_json(const nlohmann::json& j);

} // namespace gimvi

#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "mrfse/simulation.hpp"

namespace mrfse {

// Model file format (JSON, schema_version 1): alphabet labels, vertex names,
// and the ordered factor list. CPT rows are arrays in lexicographic
// parent-configuration order, first parent most significant.

nlohmann::json model_to_json(const FactorizedModel& m);
FactorizedModel model_from_json(const nlohmann::json& j);

/// Resolves a CLI model reference: an existing file is parsed as a model
/// document, anything else must be a builtin model name.
FactorizedModel resolve_model(const std::string& name_or_path);

}  // namespace mrfse

#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "mrfse/estimation.hpp"
#include "mrfse/manifest.hpp"

namespace mrfse {

/// Edge-list document: vertices, edges, per-vertex neighborhoods with scores,
/// and the run manifest. schema_version 1.
nlohmann::json graph_to_json(const GraphEstimate& g, double c, std::optional<int> max_size,
                             const RunManifest& manifest);

/// DOT rendering of the estimated graph; the manifest rides along as a
/// comment line.
std::string graph_to_dot(const GraphEstimate& g, const RunManifest& manifest);

/// Serializes a double with 17 significant digits (round-trip exact).
std::string format_real(double x);

}  // namespace mrfse

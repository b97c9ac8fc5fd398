#include "mrfse/graph_io.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mrfse {

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

nlohmann::json graph_to_json(const GraphEstimate& g, double c, std::optional<int> max_size,
                             const RunManifest& manifest) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "graph_estimate";
    j["mode"] = to_string(g.mode);
    j["c"] = c;
    if (max_size)
        j["max_size"] = *max_size;
    else
        j["max_size"] = nullptr;
    j["vertices"] = g.vertices.names;

    auto edges = nlohmann::json::array();
    for (const auto& [v, w] : g.edges)
        edges.push_back({g.vertices.names[v], g.vertices.names[w]});
    j["edges"] = edges;

    nlohmann::json neighborhoods;
    for (const auto& est : g.per_vertex) {
        nlohmann::json entry;
        auto names = nlohmann::json::array();
        for (int w : est.neighborhood) names.push_back(g.vertices.names[w]);
        entry["neighbors"] = names;
        entry["log_pl"] = est.score.log_pl;
        entry["penalty"] = est.score.penalty;
        entry["total"] = est.score.total;
        entry["set_size"] = est.score.set_size;
        entry["candidates_evaluated"] = est.candidates_evaluated;
        neighborhoods[g.vertices.names[est.target]] = entry;
    }
    j["neighborhoods"] = neighborhoods;
    j["manifest"] = manifest_to_json(manifest);
    return j;
}

std::string graph_to_dot(const GraphEstimate& g, const RunManifest& manifest) {
    std::ostringstream out;
    out << "// manifest: " << manifest_to_json(manifest).dump() << "\n";
    out << "graph estimate {\n";
    std::vector<bool> covered(g.vertices.count(), false);
    for (const auto& [v, w] : g.edges) covered[v] = covered[w] = true;
    for (int v = 0; v < g.vertices.count(); ++v) {
        if (!covered[v]) out << "  \"" << g.vertices.names[v] << "\";\n";
    }
    for (const auto& [v, w] : g.edges)
        out << "  \"" << g.vertices.names[v] << "\" -- \"" << g.vertices.names[w] << "\";\n";
    out << "}\n";
    return out.str();
}

}  // namespace mrfse

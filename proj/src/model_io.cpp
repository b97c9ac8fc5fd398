#include "mrfse/model_io.hpp"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "mrfse/errors.hpp"
#include "mrfse/manifest.hpp"

namespace mrfse {

nlohmann::json model_to_json(const FactorizedModel& m) {
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "factorized_model";
    j["name"] = m.name;
    j["alphabet"] = m.alphabet.labels;
    j["vertices"] = m.vertices.names;

    auto factors = nlohmann::json::array();
    for (const auto& f : m.factors) {
        nlohmann::json entry;
        entry["target"] = m.vertices.names[f.target];
        auto parents = nlohmann::json::array();
        for (int parent : f.parents) parents.push_back(m.vertices.names[parent]);
        entry["parents"] = parents;
        auto cpt = nlohmann::json::array();
        for (const auto& row : f.cpt) cpt.push_back(row.probs);
        entry["cpt"] = cpt;
        factors.push_back(entry);
    }
    j["factors"] = factors;
    return j;
}

FactorizedModel model_from_json(const nlohmann::json& j) {
    try {
        FactorizedModel m;
        m.name = j.value("name", "model");
        m.alphabet.labels = j.at("alphabet").get<std::vector<std::string>>();
        m.vertices.names = j.at("vertices").get<std::vector<std::string>>();
        for (const auto& entry : j.at("factors")) {
            Factor f;
            const auto target = m.vertices.id_of(entry.at("target").get<std::string>());
            if (!target) throw FormatError("factor target is not a declared vertex");
            f.target = *target;
            for (const auto& pname : entry.at("parents")) {
                const auto parent = m.vertices.id_of(pname.get<std::string>());
                if (!parent) throw FormatError("factor parent is not a declared vertex");
                f.parents.push_back(*parent);
            }
            for (const auto& row : entry.at("cpt")) {
                DiscreteDistribution d;
                d.probs = row.get<std::vector<double>>();
                f.cpt.push_back(std::move(d));
            }
            m.factors.push_back(std::move(f));
        }
        m.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("bad model document: ") + e.what());
    } catch (const ArgumentError& e) {
        throw FormatError(std::string("bad model document: ") + e.what());
    }
}

FactorizedModel resolve_model(const std::string& name_or_path) {
    if (std::filesystem::exists(name_or_path)) {
        std::ifstream in(name_or_path);
        if (!in) throw FormatError(name_or_path + ": cannot open file");
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw FormatError(name_or_path + ": invalid JSON: " + e.what());
        }
        return model_from_json(j);
    }
    return builtin_model(name_or_path);
}

}  // namespace mrfse

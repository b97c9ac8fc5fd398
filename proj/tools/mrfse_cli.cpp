// Command-line front end: estimate, simulate, cv, diagnose, export-model.
//
// Exit codes: 0 success, 2 usage/argument error, 3 data/format error,
// 4 capacity error. Every artifact embeds (JSON) or is accompanied by
// (CSV sidecar) a run manifest; reruns with the same inputs, seed and any
// thread count are byte-identical.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mrfse/csv.hpp"
#include "mrfse/diagnostics.hpp"
#include "mrfse/errors.hpp"
#include "mrfse/estimation.hpp"
#include "mrfse/graph_io.hpp"
#include "mrfse/manifest.hpp"
#include "mrfse/model_io.hpp"
#include "mrfse/rng.hpp"
#include "mrfse/selection.hpp"
#include "mrfse/simulation.hpp"

namespace {

using namespace mrfse;

std::string g_stage = "startup";

void set_stage(const std::string& stage) { g_stage = stage; }

void write_text_file(const std::string& path, const std::string& content) {
    set_stage("write-output");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError(path + ": cannot open for writing");
    out << content;
    if (!out) throw FormatError(path + ": write failed");
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

// CSV artifacts carry their manifest in a sidecar file.
void write_csv_with_manifest(const std::string& path, const std::string& csv,
                             const RunManifest& manifest) {
    write_text_file(path, csv);
    write_json_file(path + ".manifest.json", manifest_to_json(manifest));
}

GraphMode parse_mode(const std::string& mode) {
    const auto parsed = graph_mode_from_string(mode);
    if (!parsed) throw ArgumentError("mode must be 'and' or 'or'");
    return *parsed;
}

struct InputOptions {
    std::string path;
    bool binarize = false;
    std::int64_t thin = 1;
};

Sample load_input(const InputOptions& in) {
    set_stage("load-input");
    Sample s;
    if (in.binarize) {
        const PriceSeries prices = load_price_series(in.path);
        s = binarize_series(prices.names, prices.series);
    } else {
        s = load_sample(in.path);
    }
    if (in.thin != 1) s = thin_sample(s, in.thin);
    return s;
}

std::string model_digest(const FactorizedModel& m) {
    return sha256_hex(model_to_json(m).dump());
}

std::string join_names(const std::vector<std::string>& names, char sep) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i > 0) out.push_back(sep);
        out += names[i];
    }
    return out;
}

int run_estimate(const InputOptions& input, double c, const std::string& mode_str,
                 std::optional<int> max_size, int threads,
                 const std::vector<std::string>& formats, const std::string& out_path) {
    if (c <= 0.0) throw ArgumentError("penalty constant must be positive");
    const GraphMode mode = parse_mode(mode_str);
    bool want_dot = false;
    for (const auto& f : formats) {
        if (f == "dot")
            want_dot = true;
        else if (f != "json")
            throw ArgumentError("estimate supports --format json and dot");
    }

    const Sample s = load_input(input);

    set_stage("estimate");
    const GraphEstimate g = estimate_graph(s, c, mode, max_size, threads);

    RunManifest manifest;
    manifest.command = "estimate";
    manifest.parameters["input"] = input.path;
    manifest.parameters["binarize"] = input.binarize ? "true" : "false";
    manifest.parameters["thin"] = std::to_string(input.thin);
    manifest.parameters["c"] = format_real(c);
    manifest.parameters["mode"] = to_string(mode);
    if (max_size) manifest.parameters["max_size"] = std::to_string(*max_size);
    manifest.input_digest = sha256_file(input.path);

    write_json_file(out_path, graph_to_json(g, c, max_size, manifest));
    if (want_dot) {
        std::filesystem::path dot_path(out_path);
        dot_path.replace_extension(".dot");
        write_text_file(dot_path.string(), graph_to_dot(g, manifest));
    }
    return 0;
}

int run_simulate(const std::string& model_ref, const std::vector<std::int64_t>& n_values,
                 const std::vector<double>& c_list, const std::vector<std::string>& mode_strs,
                 int runs, std::uint64_t seed, std::optional<int> max_size, int threads,
                 const std::string& out_path) {
    if (runs < 1) throw ArgumentError("runs must be positive");
    if (c_list.empty()) throw ArgumentError("c-list is empty");
    for (double c : c_list) {
        if (c <= 0.0) throw ArgumentError("penalty constant must be positive");
    }
    std::vector<GraphMode> modes;
    for (const auto& m : mode_strs) modes.push_back(parse_mode(m));

    set_stage("load-model");
    const FactorizedModel model = resolve_model(model_ref);
    set_stage("true-graph");
    const TrueGraph truth = true_graph(model);

    set_stage("simulate");
    std::ostringstream csv;
    csv << "model,n,c,mode,run,seed,ue,oe,te\n";
    for (std::size_t ni = 0; ni < n_values.size(); ++ni) {
        const std::int64_t n = n_values[ni];
        const std::uint64_t n_seed = derive_seed(seed, ni);

        // One sample per run, shared by every (c, mode) pair; neighborhoods
        // are mode-independent so each (run, c) needs a single search.
        std::vector<std::vector<std::vector<NeighborhoodEstimate>>> estimates(
            runs, std::vector<std::vector<NeighborhoodEstimate>>(c_list.size()));
        std::vector<std::uint64_t> run_seeds(runs);
        parallel_for_index(runs, threads, [&](std::int64_t run) {
            run_seeds[run] = derive_seed(n_seed, static_cast<std::uint64_t>(run));
            const Sample s = sample_model(model, n, run_seeds[run]);
            for (std::size_t ci = 0; ci < c_list.size(); ++ci)
                estimates[run][ci] = estimate_all_neighborhoods(s, c_list[ci], max_size, 1);
        });

        for (std::size_t ci = 0; ci < c_list.size(); ++ci) {
            for (const GraphMode mode : modes) {
                double sum_ue = 0.0, sum_oe = 0.0, sum_te = 0.0;
                for (int run = 0; run < runs; ++run) {
                    const GraphEstimate g =
                        assemble_graph(model.vertices, estimates[run][ci], mode);
                    const ErrorReport r = error_metrics(truth, g);
                    sum_ue += r.ue;
                    sum_oe += r.oe;
                    sum_te += r.te;
                    csv << model.name << ',' << n << ',' << format_real(c_list[ci]) << ','
                        << to_string(mode) << ',' << run << ',' << run_seeds[run] << ','
                        << format_real(r.ue) << ',' << format_real(r.oe) << ','
                        << format_real(r.te) << '\n';
                }
                csv << model.name << ',' << n << ',' << format_real(c_list[ci]) << ','
                    << to_string(mode) << ",mean,," << format_real(sum_ue / runs) << ','
                    << format_real(sum_oe / runs) << ',' << format_real(sum_te / runs) << '\n';
            }
        }
    }

    RunManifest manifest;
    manifest.command = "simulate";
    manifest.parameters["model"] = model_ref;
    std::string n_param;
    for (std::size_t i = 0; i < n_values.size(); ++i)
        n_param += (i ? "," : "") + std::to_string(n_values[i]);
    manifest.parameters["n"] = n_param;
    std::string c_param;
    for (std::size_t i = 0; i < c_list.size(); ++i)
        c_param += (i ? "," : "") + format_real(c_list[i]);
    manifest.parameters["c_list"] = c_param;
    std::string mode_param;
    for (std::size_t i = 0; i < modes.size(); ++i)
        mode_param += (i ? std::string(",") : std::string()) + to_string(modes[i]);
    manifest.parameters["modes"] = mode_param;
    manifest.parameters["runs"] = std::to_string(runs);
    if (max_size) manifest.parameters["max_size"] = std::to_string(*max_size);
    manifest.seed = seed;
    manifest.input_digest = model_digest(model);

    write_csv_with_manifest(out_path, csv.str(), manifest);
    return 0;
}

int run_cv(const InputOptions& input, const std::vector<double>& grid, int folds,
           std::uint64_t seed, const std::string& mode_str, std::optional<int> max_size,
           int threads, const std::string& out_path) {
    const GraphMode mode = parse_mode(mode_str);
    const Sample s = load_input(input);

    set_stage("cross-validate");
    const CVResult result = cross_validate_c(s, grid, folds, seed, mode, max_size, threads);

    RunManifest manifest;
    manifest.command = "cv";
    manifest.parameters["input"] = input.path;
    manifest.parameters["binarize"] = input.binarize ? "true" : "false";
    manifest.parameters["thin"] = std::to_string(input.thin);
    std::string grid_param;
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid_param += (i ? "," : "") + format_real(grid[i]);
    manifest.parameters["grid"] = grid_param;
    manifest.parameters["folds"] = std::to_string(folds);
    manifest.parameters["mode"] = to_string(mode);
    if (max_size) manifest.parameters["max_size"] = std::to_string(*max_size);
    manifest.seed = seed;
    manifest.input_digest = sha256_file(input.path);

    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "cv_result";
    j["grid"] = result.grid;
    j["folds"] = result.folds;
    j["seed"] = result.seed;
    j["mode"] = to_string(result.mode);
    j["fold_sizes"] = result.fold_sizes;
    j["fold_losses"] = result.fold_losses;
    j["mean_losses"] = result.mean_losses();
    j["chosen_c"] = result.chosen_c;
    j["manifest"] = manifest_to_json(manifest);
    write_json_file(out_path, j);
    return 0;
}

int run_diagnose(const std::string& model_ref, const std::string& vertex,
                 const std::vector<std::string>& cond_names,
                 const std::vector<std::string>& cond_values,
                 const std::vector<double>& deltas, const std::vector<std::int64_t>& n_values,
                 int replications, std::uint64_t seed, int threads,
                 const std::string& out_path) {
    set_stage("load-model");
    const FactorizedModel model = resolve_model(model_ref);

    set_stage("diagnose");
    const auto v = model.vertices.id_of(vertex);
    if (!v) throw ArgumentError("unknown vertex: " + vertex);
    if (cond_names.size() != cond_values.size())
        throw ArgumentError("--cond and --cond-config must have the same length");

    Configuration a_w;
    {
        std::vector<std::pair<int, std::uint8_t>> assignments;
        for (std::size_t i = 0; i < cond_names.size(); ++i) {
            const auto id = model.vertices.id_of(cond_names[i]);
            if (!id) throw ArgumentError("unknown vertex: " + cond_names[i]);
            const auto code = model.alphabet.code_of(cond_values[i]);
            if (!code) throw ArgumentError("unknown symbol: " + cond_values[i]);
            assignments.emplace_back(*id, static_cast<std::uint8_t>(*code));
        }
        std::sort(assignments.begin(), assignments.end());
        for (const auto& [id, code] : assignments) {
            a_w.vertices.push_back(id);
            a_w.symbols.push_back(code);
        }
        a_w.validate();
    }

    std::ostringstream csv;
    csv << "model,vertex,cond_set,cond_config,delta,n,replications,empirical_freq,bound_value,"
           "satisfied\n";
    std::vector<std::string> sorted_names, sorted_values;
    for (std::size_t i = 0; i < a_w.vertices.size(); ++i) {
        sorted_names.push_back(model.vertices.names[a_w.vertices[i]]);
        sorted_values.push_back(model.alphabet.labels[a_w.symbols[i]]);
    }
    for (const double delta : deltas) {
        for (const std::int64_t n : n_values) {
            const BoundCheck check = check_deviation_bound(model, *v, a_w.vertices, a_w.symbols,
                                                           delta, n, replications, seed, threads);
            csv << model.name << ',' << vertex << ',' << join_names(sorted_names, '|') << ','
                << join_names(sorted_values, '|') << ',' << format_real(check.delta) << ','
                << check.n << ',' << check.replications << ','
                << format_real(check.empirical_freq) << ',' << format_real(check.bound_value)
                << ',' << (check.satisfied ? "true" : "false") << '\n';
        }
    }

    RunManifest manifest;
    manifest.command = "diagnose";
    manifest.parameters["model"] = model_ref;
    manifest.parameters["vertex"] = vertex;
    manifest.parameters["cond"] = join_names(sorted_names, '|');
    manifest.parameters["cond_config"] = join_names(sorted_values, '|');
    std::string delta_param;
    for (std::size_t i = 0; i < deltas.size(); ++i)
        delta_param += (i ? "," : "") + format_real(deltas[i]);
    manifest.parameters["delta"] = delta_param;
    std::string n_param;
    for (std::size_t i = 0; i < n_values.size(); ++i)
        n_param += (i ? "," : "") + std::to_string(n_values[i]);
    manifest.parameters["n"] = n_param;
    manifest.parameters["replications"] = std::to_string(replications);
    manifest.seed = seed;
    manifest.input_digest = model_digest(model);

    write_csv_with_manifest(out_path, csv.str(), manifest);
    return 0;
}

int run_export_model(const std::string& model_ref, const std::string& out_path) {
    set_stage("load-model");
    const FactorizedModel model = resolve_model(model_ref);
    write_json_file(out_path, model_to_json(model));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure estimation for discrete Markov random fields"};
    app.require_subcommand(1);

    int threads = 1;
    app.add_option("--threads", threads, "Worker threads (env MRFSE_THREADS)")
        ->envname("MRFSE_THREADS")
        ->check(CLI::PositiveNumber);

    // estimate
    auto* est = app.add_subcommand("estimate", "Estimate a dependence graph from a CSV sample");
    InputOptions est_input;
    double est_c = 0.0;
    std::string est_mode = "or";
    std::optional<int> est_max_size;
    std::vector<std::string> est_formats{"json"};
    std::string est_out;
    est->add_option("--input", est_input.path, "Symbol CSV (or price CSV with --binarize)")
        ->required();
    est->add_flag("--binarize", est_input.binarize, "Input is a price series; code up-moves as 1");
    est->add_option("--thin", est_input.thin, "Keep every k-th row")->check(CLI::PositiveNumber);
    est->add_option("--c", est_c, "Penalty constant")->required();
    est->add_option("--mode", est_mode, "Edge rule: and | or");
    est->add_option("--max-size", est_max_size, "Cap on candidate neighborhood size");
    est->add_option("--format", est_formats, "Artifacts: json, dot")->delimiter(',');
    est->add_option("--out", est_out, "Output JSON path")->required();

    // simulate
    auto* sim = app.add_subcommand("simulate", "Sample a model and score graph recovery");
    std::string sim_model;
    std::vector<std::int64_t> sim_n;
    std::vector<double> sim_c;
    std::vector<std::string> sim_modes{"and", "or"};
    int sim_runs = 1;
    std::uint64_t sim_seed = 1;
    std::optional<int> sim_max_size;
    std::string sim_out;
    sim->add_option("--model", sim_model, "Builtin model name or model JSON path")->required();
    sim->add_option("--n", sim_n, "Sample sizes")->required()->delimiter(',');
    sim->add_option("--c-list", sim_c, "Penalty constants")->required()->delimiter(',');
    sim->add_option("--mode", sim_modes, "Edge rules to evaluate")->delimiter(',');
    sim->add_option("--runs", sim_runs, "Replications per configuration");
    sim->add_option("--seed", sim_seed, "Master seed");
    sim->add_option("--max-size", sim_max_size, "Cap on candidate neighborhood size");
    sim->add_option("--out", sim_out, "Output CSV path")->required();

    // cv
    auto* cv = app.add_subcommand("cv", "Choose the penalty constant by k-fold cross-validation");
    InputOptions cv_input;
    std::vector<double> cv_grid;
    int cv_folds = 0;
    std::uint64_t cv_seed = 1;
    std::string cv_mode = "or";
    std::optional<int> cv_max_size;
    std::string cv_out;
    cv->add_option("--input", cv_input.path, "Symbol CSV (or price CSV with --binarize)")
        ->required();
    cv->add_flag("--binarize", cv_input.binarize, "Input is a price series; code up-moves as 1");
    cv->add_option("--thin", cv_input.thin, "Keep every k-th row")->check(CLI::PositiveNumber);
    cv->add_option("--grid", cv_grid, "Candidate penalty constants")->required()->delimiter(',');
    cv->add_option("--folds", cv_folds, "Number of folds")->required();
    cv->add_option("--seed", cv_seed, "Shuffle seed");
    cv->add_option("--mode", cv_mode, "Edge rule recorded with the result: and | or");
    cv->add_option("--max-size", cv_max_size, "Cap on candidate neighborhood size");
    cv->add_option("--out", cv_out, "Output JSON path")->required();

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "Monte Carlo check of the deviation bound");
    std::string diag_model, diag_vertex;
    std::vector<std::string> diag_cond, diag_cond_config;
    std::vector<double> diag_delta;
    std::vector<std::int64_t> diag_n;
    int diag_reps = 0;
    std::uint64_t diag_seed = 1;
    std::string diag_out;
    diag->add_option("--model", diag_model, "Builtin model name or model JSON path")->required();
    diag->add_option("--vertex", diag_vertex, "Target vertex name")->required();
    diag->add_option("--cond", diag_cond, "Conditioning vertex names")->delimiter(',');
    diag->add_option("--cond-config", diag_cond_config, "Symbols for the conditioning vertices")
        ->delimiter(',');
    diag->add_option("--delta", diag_delta, "Deviation parameters")->required()->delimiter(',');
    diag->add_option("--n", diag_n, "Sample sizes")->required()->delimiter(',');
    diag->add_option("--replications", diag_reps, "Monte Carlo replications")->required();
    diag->add_option("--seed", diag_seed, "Master seed");
    diag->add_option("--out", diag_out, "Output CSV path")->required();

    // export-model
    auto* exp = app.add_subcommand("export-model", "Write a model as a JSON document");
    std::string exp_model, exp_out;
    exp->add_option("--model", exp_model, "Builtin model name or model JSON path")->required();
    exp->add_option("--out", exp_out, "Output JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (est->parsed())
            return run_estimate(est_input, est_c, est_mode, est_max_size, threads, est_formats,
                                est_out);
        if (sim->parsed())
            return run_simulate(sim_model, sim_n, sim_c, sim_modes, sim_runs, sim_seed,
                                sim_max_size, threads, sim_out);
        if (cv->parsed())
            return run_cv(cv_input, cv_grid, cv_folds, cv_seed, cv_mode, cv_max_size, threads,
                          cv_out);
        if (diag->parsed())
            return run_diagnose(diag_model, diag_vertex, diag_cond, diag_cond_config, diag_delta,
                                diag_n, diag_reps, diag_seed, threads, diag_out);
        if (exp->parsed()) return run_export_model(exp_model, exp_out);
    } catch (const UndefinedConditionalError& e) {
        std::cerr << "mrfse: " << g_stage << ": " << e.what() << "\n";
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "mrfse: " << g_stage << ": " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "mrfse: " << g_stage << ": " << e.what() << "\n";
        return 4;
    } catch (const FormatError& e) {
        std::cerr << "mrfse: " << g_stage << ": " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "mrfse: " << g_stage << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mrfse/core.hpp"
#include "mrfse/estimation.hpp"
#include "mrfse/scoring.hpp"

namespace mrfse {

/// One conditional-probability factor p(x_target | x_parents). The CPT has
/// one row per parent configuration, in lexicographic configuration order
/// with the first listed parent most significant.
struct Factor {
    int target = 0;
    std::vector<int> parents;  // ascending ids, all earlier in factor order
    std::vector<DiscreteDistribution> cpt;

    std::size_t row_index(std::span<const std::uint8_t> parent_config, int alphabet_size) const;
};

/// Joint distribution specified by an ordered factorization; supports exact
/// probability computation and ancestral sampling. Immutable once validated.
struct FactorizedModel {
    std::string name;
    Alphabet alphabet;
    VertexSet vertices;
    std::vector<Factor> factors;

    int p() const { return vertices.count(); }
    void validate() const;

    /// Exact joint probability of one full configuration (product of factors).
    double joint_probability(std::span<const std::uint8_t> full_config) const;
};

struct TrueGraph {
    VertexSet vertices;
    std::vector<std::pair<int, int>> edges;  // v < w, sorted

    bool has_edge(int v, int w) const;
    std::vector<int> neighbors(int v) const;
};

/// Edge-error rates over ordered vertex pairs.
struct ErrorReport {
    double ue = 0.0;
    double oe = 0.0;
    double te = 0.0;
};

/// Built-in models: "example3" (five ternary variables with a hub structure),
/// "markov_chain_window(k)" (binary order-one chain with a forbidden
/// transition, projected onto k consecutive sites), "complete(p)" and
/// "independent(p)" (seeded ternary CPTs for the two density extremes).
FactorizedModel builtin_model(const std::string& name);

/// n i.i.d. draws by ancestral sampling in factor order; bit-reproducible for
/// a given seed (see rng.hpp for the stream contract).
Sample sample_model(const FactorizedModel& m, std::int64_t n, std::uint64_t seed);

/// Exact p(._v | a_W) by summation of the joint over the unassigned vertices;
/// empty when the conditioning event has probability zero. More than 20
/// unassigned vertices is a capacity error.
std::optional<DiscreteDistribution> exact_conditional(const FactorizedModel& m, int v,
                                                      std::span<const int> w_set,
                                                      std::span<const std::uint8_t> a_w);
std::optional<DiscreteDistribution> exact_conditional(const FactorizedModel& m, int v,
                                                      const Configuration& a_w);

/// Conditional-dependence graph of the model: w is a neighbor of v exactly
/// when dropping w from the full conditioning set changes some conditional of
/// X_v on a positive-probability configuration (tolerance 1e-10).
TrueGraph true_graph(const FactorizedModel& m);

/// Constants appearing in the strong-consistency threshold for vertex v.
/// alpha_min is +infinity when ne(v) is empty.
struct TheoremConstants {
    double p_min = 0.0;
    double alpha_min = 0.0;
    double c_threshold = 0.0;
};
TheoremConstants theorem_constants(const FactorizedModel& m, int v);

/// ue = missed / true ordered edges, oe = spurious / true ordered non-edges,
/// te = (oe * |ordered edges| + ue * |ordered non-edges|) / (|V| (|V|-1)).
/// Empty denominators: ue = 0 for an edgeless truth, oe = 0 for a complete
/// truth.
ErrorReport error_metrics(const TrueGraph& truth, const GraphEstimate& est);

}  // namespace mrfse

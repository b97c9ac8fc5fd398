#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mrfse/core.hpp"
#include "mrfse/scoring.hpp"

namespace mrfse {

enum class GraphMode { And, Or };

const char* to_string(GraphMode mode);
std::optional<GraphMode> graph_mode_from_string(std::string_view s);

/// Result of the exhaustive neighborhood search for one vertex.
struct NeighborhoodEstimate {
    int target = 0;
    std::vector<int> neighborhood;  // ascending vertex ids
    PenalizedScore score;
    std::uint64_t candidates_evaluated = 0;
};

/// Undirected graph assembled from per-vertex neighborhoods.
struct GraphEstimate {
    VertexSet vertices;
    std::vector<std::pair<int, int>> edges;  // v < w, sorted
    GraphMode mode = GraphMode::And;
    std::vector<NeighborhoodEstimate> per_vertex;

    bool has_edge(int v, int w) const;
};

/// Score comparison used by the search: totals within
/// 1e-9 * max(1, |total|) of each other are a tie.
bool scores_tied(double a, double b);

/// Candidate sets are enumerated by increasing size and lexicographically
/// within a size; `fn` receives each set (ascending ids) with its log
/// pseudo-likelihood. The enumeration order is the tie-breaking order.
void for_each_candidate(const Sample& s, int v, std::optional<int> max_size,
                        const std::function<void(const std::vector<int>&, double)>& fn);

/// Argmax of the penalized criterion over all W in V \ {v} with
/// |W| <= max_size (default: full search up to p-1). Ties resolve to the
/// first candidate in enumeration order, i.e. smallest set, then smallest
/// lexicographic id list.
NeighborhoodEstimate estimate_neighborhood(const Sample& s, int v, double c,
                                           std::optional<int> max_size = {});

/// Per-vertex searches are independent; `threads` > 1 distributes vertices
/// over a worker pool. Output is identical for every thread count.
std::vector<NeighborhoodEstimate> estimate_all_neighborhoods(const Sample& s, double c,
                                                             std::optional<int> max_size = {},
                                                             int threads = 1);

/// Edge {v,w}: requires membership in both directions under GraphMode::And,
/// either direction under GraphMode::Or.
GraphEstimate assemble_graph(const VertexSet& vertices,
                             std::vector<NeighborhoodEstimate> per_vertex, GraphMode mode);

GraphEstimate estimate_graph(const Sample& s, double c, GraphMode mode,
                             std::optional<int> max_size = {}, int threads = 1);

/// Runs `fn(i)` for i in [0, count), distributing indices over `threads`
/// workers. Tasks must be independent; results keyed by index stay
/// deterministic regardless of the thread count.
void parallel_for_index(std::int64_t count, int threads,
                        const std::function<void(std::int64_t)>& fn);

}  // namespace mrfse

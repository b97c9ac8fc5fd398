#include "mrfse/estimation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "mrfse/counting.hpp"
#include "mrfse/errors.hpp"

namespace mrfse {

const char* to_string(GraphMode mode) { return mode == GraphMode::And ? "and" : "or"; }

std::optional<GraphMode> graph_mode_from_string(std::string_view s) {
    if (s == "and") return GraphMode::And;
    if (s == "or") return GraphMode::Or;
    return std::nullopt;
}

bool GraphEstimate::has_edge(int v, int w) const {
    if (v > w) std::swap(v, w);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(v, w));
}

bool scores_tied(double a, double b) {
    const double scale = std::max(1.0, std::max(std::abs(a), std::abs(b)));
    return std::abs(a - b) <= 1e-9 * scale;
}

void for_each_candidate(const Sample& s, int v, std::optional<int> max_size,
                        const std::function<void(const std::vector<int>&, double)>& fn) {
    const int p = s.p();
    if (v < 0 || v >= p) throw ArgumentError("target vertex id out of range");

    std::vector<int> pool;
    pool.reserve(p - 1);
    for (int u = 0; u < p; ++u) {
        if (u != v) pool.push_back(u);
    }
    const int limit = std::min<int>(max_size.value_or(p - 1), static_cast<int>(pool.size()));
    if (max_size && *max_size < 0) throw ArgumentError("max_size must be nonnegative");

    std::vector<int> subset;
    for (int k = 0; k <= limit; ++k) {
        // lexicographically ordered k-combinations of the ascending pool
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            subset.clear();
            for (int i : idx) subset.push_back(pool[i]);
            const CountTable t = build_counts(s, v, subset);
            fn(subset, log_pseudo_likelihood(t));
            if (k == 0) break;
            int i = k - 1;
            while (i >= 0 && idx[i] == static_cast<int>(pool.size()) - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
}

NeighborhoodEstimate estimate_neighborhood(const Sample& s, int v, double c,
                                           std::optional<int> max_size) {
    if (c <= 0.0) throw ArgumentError("penalty constant must be positive");
    if (max_size && *max_size > s.p() - 1)
        throw ArgumentError("max_size cannot exceed p - 1");

    const double log_n = std::log(static_cast<double>(s.n));
    const int a = s.alphabet.size();

    NeighborhoodEstimate best;
    best.target = v;
    bool have_best = false;
    for_each_candidate(s, v, max_size, [&](const std::vector<int>& w, double log_pl) {
        PenalizedScore score;
        score.c = c;
        score.set_size = static_cast<int>(w.size());
        score.log_pl = log_pl;
        score.penalty = c * alphabet_power(a, score.set_size) * log_n;
        score.total = score.log_pl - score.penalty;
        ++best.candidates_evaluated;
        // enumeration order is the tie order: keep the incumbent on ties
        if (!have_best || (score.total > best.score.total && !scores_tied(score.total, best.score.total))) {
            best.neighborhood = w;
            best.score = score;
            have_best = true;
        }
    });
    return best;
}

void parallel_for_index(std::int64_t count, int threads,
                        const std::function<void(std::int64_t)>& fn) {
    if (threads < 1) throw ArgumentError("thread count must be positive");
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, count));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&]() {
            while (true) {
                const std::int64_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::vector<NeighborhoodEstimate> estimate_all_neighborhoods(const Sample& s, double c,
                                                             std::optional<int> max_size,
                                                             int threads) {
    std::vector<NeighborhoodEstimate> out(s.p());
    parallel_for_index(s.p(), threads, [&](std::int64_t v) {
        out[v] = estimate_neighborhood(s, static_cast<int>(v), c, max_size);
    });
    return out;
}

GraphEstimate assemble_graph(const VertexSet& vertices,
                             std::vector<NeighborhoodEstimate> per_vertex, GraphMode mode) {
    const int p = vertices.count();
    if (static_cast<int>(per_vertex.size()) != p)
        throw ArgumentError("per-vertex estimates do not cover the vertex set");

    std::vector<std::vector<bool>> member(p, std::vector<bool>(p, false));
    for (const auto& est : per_vertex) {
        for (int w : est.neighborhood) member[est.target][w] = true;
    }

    GraphEstimate g;
    g.vertices = vertices;
    g.mode = mode;
    g.per_vertex = std::move(per_vertex);
    for (int v = 0; v < p; ++v) {
        for (int w = v + 1; w < p; ++w) {
            const bool edge = mode == GraphMode::And ? (member[v][w] && member[w][v])
                                                     : (member[v][w] || member[w][v]);
            if (edge) g.edges.emplace_back(v, w);
        }
    }
    return g;
}

GraphEstimate estimate_graph(const Sample& s, double c, GraphMode mode,
                             std::optional<int> max_size, int threads) {
    return assemble_graph(s.vertices, estimate_all_neighborhoods(s, c, max_size, threads), mode);
}

}  // namespace mrfse

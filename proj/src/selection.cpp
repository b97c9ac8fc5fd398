#include "mrfse/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mrfse/counting.hpp"
#include "mrfse/errors.hpp"
#include "mrfse/rng.hpp"
#include "mrfse/scoring.hpp"

namespace mrfse {

namespace {

Sample subset_rows(const Sample& s, const std::vector<std::int64_t>& rows) {
    Sample out;
    out.alphabet = s.alphabet;
    out.vertices = s.vertices;
    out.n = static_cast<std::int64_t>(rows.size());
    out.data.reserve(rows.size() * s.p());
    for (std::int64_t r : rows) {
        const auto row = s.row(r);
        out.data.insert(out.data.end(), row.begin(), row.end());
    }
    return out;
}

// Candidate sets with their training log pseudo-likelihoods, in the canonical
// enumeration (= tie-breaking) order. Cached once per fold and reused for
// every grid value: the counts do not depend on c.
struct CandidateCache {
    std::vector<std::vector<int>> sets;
    std::vector<double> log_pl;
};

std::vector<int> select_neighborhood(const CandidateCache& cache, double c, std::int64_t n,
                                     int alphabet_size) {
    const double log_n = std::log(static_cast<double>(n));
    double best_total = 0.0;
    std::size_t best = 0;
    for (std::size_t i = 0; i < cache.sets.size(); ++i) {
        const double penalty =
            c * alphabet_power(alphabet_size, static_cast<int>(cache.sets[i].size())) * log_n;
        const double total = cache.log_pl[i] - penalty;
        if (i == 0 || (total > best_total && !scores_tied(total, best_total))) {
            best_total = total;
            best = i;
        }
    }
    return cache.sets[best];
}

}  // namespace

std::vector<double> CVResult::mean_losses() const {
    std::vector<double> means;
    means.reserve(fold_losses.size());
    for (const auto& row : fold_losses) {
        means.push_back(std::accumulate(row.begin(), row.end(), 0.0) /
                        static_cast<double>(row.size()));
    }
    return means;
}

CVResult cross_validate_c(const Sample& s, std::vector<double> grid, int folds,
                          std::uint64_t seed, GraphMode mode, std::optional<int> max_size,
                          int threads) {
    if (folds < 2) throw ArgumentError("cross-validation requires at least 2 folds");
    if (folds > s.n) throw ArgumentError("more folds than observations");
    if (grid.empty()) throw ArgumentError("grid of penalty constants is empty");
    for (double c : grid) {
        if (c <= 0.0) throw ArgumentError("penalty constant must be positive");
    }

    const int p = s.p();
    const int a = s.alphabet.size();
    const double fallback_loss = std::log(static_cast<double>(a));

    // Seeded shuffle, then near-equal contiguous blocks of the shuffled order.
    std::vector<std::int64_t> order(s.n);
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(seed);
    shuffle_with(order, rng);

    std::vector<std::vector<std::int64_t>> fold_rows(folds);
    const std::int64_t base = s.n / folds;
    const std::int64_t extra = s.n % folds;
    std::int64_t cursor = 0;
    for (int f = 0; f < folds; ++f) {
        const std::int64_t size = base + (f < extra ? 1 : 0);
        fold_rows[f].assign(order.begin() + cursor, order.begin() + cursor + size);
        std::sort(fold_rows[f].begin(), fold_rows[f].end());
        cursor += size;
    }

    CVResult result;
    result.grid = grid;
    result.folds = folds;
    result.seed = seed;
    result.mode = mode;
    result.fold_losses.assign(grid.size(), std::vector<double>(folds, 0.0));
    for (int f = 0; f < folds; ++f)
        result.fold_sizes.push_back(static_cast<std::int64_t>(fold_rows[f].size()));

    parallel_for_index(folds, threads, [&](std::int64_t f) {
        std::vector<std::int64_t> train_rows;
        train_rows.reserve(s.n - fold_rows[f].size());
        std::size_t vi = 0;
        for (std::int64_t r = 0; r < s.n; ++r) {
            if (vi < fold_rows[f].size() && fold_rows[f][vi] == r) {
                ++vi;
                continue;
            }
            train_rows.push_back(r);
        }
        const Sample train = subset_rows(s, train_rows);

        std::vector<CandidateCache> caches(p);
        for (int v = 0; v < p; ++v) {
            for_each_candidate(train, v, max_size, [&](const std::vector<int>& w, double lpl) {
                caches[v].sets.push_back(w);
                caches[v].log_pl.push_back(lpl);
            });
        }

        std::vector<std::uint8_t> config;
        for (std::size_t ci = 0; ci < grid.size(); ++ci) {
            double loss_sum = 0.0;
            for (int v = 0; v < p; ++v) {
                const std::vector<int> ne = select_neighborhood(caches[v], grid[ci], train.n, a);
                const CountTable table = build_counts(train, v, ne);
                for (std::int64_t r : fold_rows[f]) {
                    const auto row = s.row(r);
                    config.clear();
                    for (int u : ne) config.push_back(row[u]);
                    const auto table_row = table.find_row(config);
                    if (table_row && table.row_counts(*table_row)[row[v]] > 0) {
                        loss_sum -= std::log(
                            static_cast<double>(table.row_counts(*table_row)[row[v]]) /
                            static_cast<double>(table.row_total(*table_row)));
                    } else {
                        loss_sum += fallback_loss;
                    }
                }
            }
            result.fold_losses[ci][f] =
                loss_sum / (static_cast<double>(fold_rows[f].size()) * p);
        }
    });

    const std::vector<double> means = result.mean_losses();
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (means[i] < means[best] || (means[i] == means[best] && grid[i] < grid[best])) best = i;
    }
    result.chosen_c = grid[best];
    return result;
}

}  // namespace mrfse

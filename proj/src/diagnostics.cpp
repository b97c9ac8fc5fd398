#include "mrfse/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mrfse/errors.hpp"
#include "mrfse/estimation.hpp"
#include "mrfse/rng.hpp"

namespace mrfse {

BoundCheck check_deviation_bound(const FactorizedModel& m, int v, std::span<const int> w_set,
                                 std::span<const std::uint8_t> a_w, double delta, std::int64_t n,
                                 int replications, std::uint64_t seed, int threads) {
    if (delta <= 0.0) throw ArgumentError("delta must be positive");
    if (replications < 1) throw ArgumentError("replications must be positive");
    if (static_cast<double>(n) < std::exp(1.0 / delta))
        throw ArgumentError("n must be at least exp(1/delta)");

    const auto truth = exact_conditional(m, v, w_set, a_w);
    if (!truth) throw ArgumentError("conditioning configuration has probability zero");

    const int a = m.alphabet.size();
    const double threshold = delta * std::log(static_cast<double>(n));

    std::vector<char> exceeded(replications, 0);
    parallel_for_index(replications, threads, [&](std::int64_t rep) {
        const Sample s = sample_model(m, n, derive_seed(seed, static_cast<std::uint64_t>(rep)));
        std::vector<std::int64_t> counts(a, 0);
        std::int64_t n_w = 0;
        for (std::int64_t i = 0; i < s.n; ++i) {
            const auto row = s.row(i);
            bool match = true;
            for (std::size_t j = 0; j < w_set.size(); ++j) {
                if (row[w_set[j]] != a_w[j]) {
                    match = false;
                    break;
                }
            }
            if (!match) continue;
            ++n_w;
            ++counts[row[v]];
        }
        if (n_w == 0) return;  // statistic defined as 0 with no observations
        double worst = 0.0;
        for (int sym = 0; sym < a; ++sym) {
            const double diff =
                static_cast<double>(counts[sym]) / static_cast<double>(n_w) - truth->probs[sym];
            worst = std::max(worst, diff * diff);
        }
        if (static_cast<double>(n_w) * worst > threshold) exceeded[rep] = 1;
    });

    BoundCheck check;
    check.delta = delta;
    check.n = n;
    check.replications = replications;
    check.empirical_freq =
        static_cast<double>(std::count(exceeded.begin(), exceeded.end(), 1)) / replications;
    const double log_n = std::log(static_cast<double>(n));
    check.bound_value = 2.0 * a * delta * log_n * log_n / std::pow(static_cast<double>(n), delta);
    check.satisfied = check.empirical_freq <= check.bound_value || check.bound_value >= 1.0;
    return check;
}

}  // namespace mrfse

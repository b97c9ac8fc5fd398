#pragma once

#include <cstdint>
#include <span>

#include "mrfse/core.hpp"
#include "mrfse/simulation.hpp"

namespace mrfse {

/// Monte Carlo check of the deviation inequality
///   P( N(a_W) * sup_a |p_hat(a|a_W) - p(a|a_W)|^2 > delta ln n )
///     <= 2 |A| delta (ln n)^2 / n^delta.
/// Natural logarithms, matching the scoring convention.
struct BoundCheck {
    double delta = 0.0;
    std::int64_t n = 0;
    int replications = 0;
    double empirical_freq = 0.0;
    double bound_value = 0.0;
    bool satisfied = false;
};

/// Draws `replications` simulated samples of size n (seeds derived from the
/// master seed by the rng.hpp splitting rule), evaluates the deviation
/// statistic against the true conditional, and compares the exceedance
/// frequency to the bound. A replication with N(a_W) = 0 counts as not
/// exceeding. Requires n >= exp(1/delta) and a positive-probability
/// conditioning configuration.
BoundCheck check_deviation_bound(const FactorizedModel& m, int v, std::span<const int> w_set,
                                 std::span<const std::uint8_t> a_w, double delta, std::int64_t n,
                                 int replications, std::uint64_t seed, int threads = 1);

}  // namespace mrfse

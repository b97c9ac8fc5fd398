#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "mrfse/errors.hpp"
#include "mrfse/estimation.hpp"
#include "mrfse/simulation.hpp"
#include "oracles.hpp"

using namespace mrfse;
using testing_helpers::make_sample;

namespace {

Sample correlated_pair(int n_half) {
    std::vector<std::vector<int>> rows;
    for (int i = 0; i < n_half; ++i) rows.push_back({0, 0});
    for (int i = 0; i < n_half; ++i) rows.push_back({1, 1});
    return make_sample(2, {"x1", "x2"}, rows);
}

Sample full_factorial(int alphabet_size, int p, int copies) {
    std::vector<std::vector<int>> rows;
    std::int64_t cells = 1;
    for (int i = 0; i < p; ++i) cells *= alphabet_size;
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        std::vector<int> row(p);
        std::int64_t rem = idx;
        for (int i = p - 1; i >= 0; --i) {
            row[i] = static_cast<int>(rem % alphabet_size);
            rem /= alphabet_size;
        }
        for (int c = 0; c < copies; ++c) rows.push_back(row);
    }
    std::vector<std::string> names;
    for (int i = 1; i <= p; ++i) names.push_back("x" + std::to_string(i));
    return make_sample(alphabet_size, names, rows);
}

}  // namespace

TEST_CASE("single-column sample has an empty neighborhood") {
    const Sample s = make_sample(2, {"only"}, {{0}, {1}, {0}});
    const NeighborhoodEstimate est = estimate_neighborhood(s, 0, 1.0);
    CHECK(est.neighborhood.empty());
    CHECK(est.candidates_evaluated == 1);
}

TEST_CASE("perfectly correlated pair selects the other column") {
    const Sample s = correlated_pair(50);
    const NeighborhoodEstimate est = estimate_neighborhood(s, 0, 1.0);
    CHECK(est.neighborhood == std::vector<int>{1});
    CHECK(est.score.total == doctest::Approx(-2.0 * std::log(100.0)).epsilon(1e-12));
    CHECK(est.score.total == doctest::Approx(-9.210340).epsilon(1e-6));
    // the rejected empty set scores 100 ln(1/2) - ln 100
    CHECK(100.0 * std::log(0.5) - std::log(100.0) == doctest::Approx(-73.920).epsilon(1e-4));
}

TEST_CASE("full-factorial samples select the empty set for every c") {
    const Sample s = full_factorial(2, 3, 2);
    for (double c : {1e-6, 0.25, 1.0, 10.0}) {
        for (int v = 0; v < s.p(); ++v) {
            CHECK(estimate_neighborhood(s, v, c).neighborhood.empty());
        }
    }
}

TEST_CASE("a large enough penalty forces the empty set") {
    const Sample s = testing_helpers::random_sample(40, 4, 60, 2);
    // c (|A|-1) ln n beyond any possible log-likelihood gain
    const double c = (-s.n * std::log(1.0 / s.alphabet.size()) + 10.0) / std::log(s.n);
    for (int v = 0; v < s.p(); ++v)
        CHECK(estimate_neighborhood(s, v, c).neighborhood.empty());
}

TEST_CASE("estimates are invariant under row permutation") {
    const Sample s = testing_helpers::random_sample(41, 4, 50, 2);
    Sample shuffled = s;
    std::vector<std::int64_t> order(s.n);
    for (std::int64_t i = 0; i < s.n; ++i) order[i] = i;
    SplitMix64 rng(5);
    shuffle_with(order, rng);
    for (std::int64_t i = 0; i < s.n; ++i) {
        const auto src = s.row(order[i]);
        std::copy(src.begin(), src.end(),
                  shuffled.data.begin() + static_cast<std::size_t>(i) * s.p());
    }
    for (int v = 0; v < s.p(); ++v) {
        const auto a = estimate_neighborhood(s, v, 0.5);
        const auto b = estimate_neighborhood(shuffled, v, 0.5);
        CHECK(a.neighborhood == b.neighborhood);
        CHECK(a.score.total == doctest::Approx(b.score.total).epsilon(1e-12));
    }
}

TEST_CASE("max_size caps the search and is validated") {
    const Sample s = testing_helpers::random_sample(42, 5, 40, 2);
    const auto est = estimate_neighborhood(s, 0, 0.05, 1);
    CHECK(est.neighborhood.size() <= 1);
    CHECK(est.candidates_evaluated == 5);  // empty set + four singletons
    CHECK_THROWS_AS(estimate_neighborhood(s, 0, 1.0, 7), ArgumentError);
    CHECK_THROWS_AS(estimate_neighborhood(s, 0, 0.0), ArgumentError);
}

TEST_CASE("search equals the enumerate-and-score reference, ties included") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        SplitMix64 rng(seed * 31 + 11);
        const int p = 2 + static_cast<int>(rng.next_below(3));  // <= 4
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_below(50));
        const int a = 2 + static_cast<int>(rng.next_below(2));
        const double c = 0.05 + 0.5 * rng.next_double();
        const Sample s = testing_helpers::random_sample(seed + 400, p, n, a);
        for (int v = 0; v < p; ++v) {
            const auto est = estimate_neighborhood(s, v, c);
            CHECK(est.neighborhood == oracle::naive_best_subset(s, v, c, p - 1));
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("graph assembly applies the and/or rules") {
    VertexSet vs{{"a", "b", "c"}};
    NeighborhoodEstimate ea, eb, ec;
    ea.target = 0;
    ea.neighborhood = {1};
    eb.target = 1;
    eb.neighborhood = {0};
    ec.target = 2;
    ec.neighborhood = {0};  // a does not reciprocate

    const GraphEstimate g_and = assemble_graph(vs, {ea, eb, ec}, GraphMode::And);
    CHECK(g_and.edges == std::vector<std::pair<int, int>>{{0, 1}});

    const GraphEstimate g_or = assemble_graph(vs, {ea, eb, ec}, GraphMode::Or);
    CHECK(g_or.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}});
}

TEST_CASE("and-edges are a subset of or-edges on random samples") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const Sample s = testing_helpers::random_sample(seed + 900, 4, 80, 2);
        const GraphEstimate g_and = estimate_graph(s, 0.2, GraphMode::And);
        const GraphEstimate g_or = estimate_graph(s, 0.2, GraphMode::Or);
        CHECK(std::includes(g_or.edges.begin(), g_or.edges.end(), g_and.edges.begin(),
                            g_and.edges.end()));
    }
}

TEST_CASE("thread count never changes the result") {
    const Sample s = testing_helpers::random_sample(77, 5, 120, 2);
    const auto serial = estimate_all_neighborhoods(s, 0.3, {}, 1);
    const auto parallel = estimate_all_neighborhoods(s, 0.3, {}, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t v = 0; v < serial.size(); ++v) {
        CHECK(serial[v].neighborhood == parallel[v].neighborhood);
        CHECK(serial[v].score.total == parallel[v].score.total);
    }
}

TEST_CASE("example3 sample at n=10000 recovers the known graph with c=1") {
    const FactorizedModel m = builtin_model("example3");
    const Sample s = sample_model(m, 10000, 2024);
    const GraphEstimate g = estimate_graph(s, 1.0, GraphMode::Or);
    const std::vector<std::pair<int, int>> expected{{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}};
    CHECK(g.edges == expected);
}

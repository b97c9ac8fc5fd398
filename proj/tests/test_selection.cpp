#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "mrfse/errors.hpp"
#include "mrfse/selection.hpp"
#include "mrfse/simulation.hpp"

using namespace mrfse;

TEST_CASE("folds partition the rows with near-equal sizes") {
    const Sample s = testing_helpers::random_sample(1, 3, 103, 2);
    const CVResult r = cross_validate_c(s, {0.5, 1.0}, 5, 42, GraphMode::Or);
    REQUIRE(r.fold_sizes.size() == 5);
    std::int64_t total = 0;
    std::int64_t smallest = s.n, largest = 0;
    for (std::int64_t size : r.fold_sizes) {
        total += size;
        smallest = std::min(smallest, size);
        largest = std::max(largest, size);
    }
    CHECK(total == s.n);
    CHECK(largest - smallest <= 1);
}

TEST_CASE("530 rows in 10 folds give 53 each") {
    const Sample s = testing_helpers::random_sample(2, 3, 530, 2);
    const CVResult r = cross_validate_c(s, {0.2, 1.0}, 10, 7, GraphMode::And);
    for (std::int64_t size : r.fold_sizes) CHECK(size == 53);
}

TEST_CASE("chosen constant comes from the grid and minimizes the mean loss") {
    const FactorizedModel m = builtin_model("example3");
    const Sample s = sample_model(m, 400, 3);
    const std::vector<double> grid{0.25, 0.5, 1.0, 2.0};
    const CVResult r = cross_validate_c(s, grid, 4, 11, GraphMode::Or);
    CHECK(std::find(grid.begin(), grid.end(), r.chosen_c) != grid.end());
    const auto means = r.mean_losses();
    const double best = *std::min_element(means.begin(), means.end());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] == r.chosen_c) CHECK(means[i] == best);
    }
}

TEST_CASE("singleton grids choose their only element") {
    const Sample s = testing_helpers::random_sample(4, 2, 40, 2);
    CHECK(cross_validate_c(s, {0.7}, 4, 9, GraphMode::And).chosen_c == 0.7);
}

TEST_CASE("cross-validation is deterministic in the seed") {
    const Sample s = testing_helpers::random_sample(5, 3, 90, 2);
    const CVResult a = cross_validate_c(s, {0.3, 0.9}, 3, 21, GraphMode::Or);
    const CVResult b = cross_validate_c(s, {0.3, 0.9}, 3, 21, GraphMode::Or);
    CHECK(a.chosen_c == b.chosen_c);
    CHECK(a.fold_losses == b.fold_losses);
    const CVResult c = cross_validate_c(s, {0.3, 0.9}, 3, 22, GraphMode::Or);
    CHECK(a.fold_losses != c.fold_losses);  // different partition
}

TEST_CASE("thread count does not change the result") {
    const Sample s = testing_helpers::random_sample(6, 4, 120, 2);
    const CVResult a = cross_validate_c(s, {0.2, 0.6, 1.5}, 4, 33, GraphMode::Or, {}, 1);
    const CVResult b = cross_validate_c(s, {0.2, 0.6, 1.5}, 4, 33, GraphMode::Or, {}, 4);
    CHECK(a.fold_losses == b.fold_losses);
    CHECK(a.chosen_c == b.chosen_c);
}

TEST_CASE("fold losses stay finite even with sparse training coverage") {
    // tiny folds force unseen configurations; the ln|A| fallback keeps the
    // losses finite
    const Sample s = testing_helpers::random_sample(7, 5, 24, 3);
    const CVResult r = cross_validate_c(s, {0.05, 0.2}, 8, 13, GraphMode::Or);
    for (const auto& row : r.fold_losses) {
        for (double loss : row) CHECK(std::isfinite(loss));
    }
}

TEST_CASE("relabeling the alphabet does not change the selection") {
    const Sample s = testing_helpers::random_sample(8, 3, 120, 3);

    // permute symbol codes 0,1,2 -> 2,0,1 and relabel accordingly
    Sample permuted = s;
    const std::array<std::uint8_t, 3> map{2, 0, 1};
    for (auto& cell : permuted.data) cell = map[cell];
    permuted.alphabet.labels = {"b", "c", "a"};  // keeps label<->code association

    const CVResult a = cross_validate_c(s, {0.1, 0.4, 1.0}, 4, 17, GraphMode::Or);
    const CVResult b = cross_validate_c(permuted, {0.1, 0.4, 1.0}, 4, 17, GraphMode::Or);
    CHECK(a.chosen_c == b.chosen_c);
    CHECK(a.fold_losses == b.fold_losses);
}

TEST_CASE("argument validation") {
    const Sample s = testing_helpers::random_sample(9, 2, 10, 2);
    CHECK_THROWS_AS(cross_validate_c(s, {1.0}, 1, 0, GraphMode::Or), ArgumentError);
    CHECK_THROWS_AS(cross_validate_c(s, {1.0}, 11, 0, GraphMode::Or), ArgumentError);
    CHECK_THROWS_AS(cross_validate_c(s, {}, 2, 0, GraphMode::Or), ArgumentError);
    CHECK_THROWS_AS(cross_validate_c(s, {0.0}, 2, 0, GraphMode::Or), ArgumentError);
}

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "mrfse/diagnostics.hpp"
#include "mrfse/errors.hpp"

using namespace mrfse;

TEST_CASE("bound value follows the closed-form expression") {
    const FactorizedModel m = builtin_model("markov_chain_window(3)");
    const BoundCheck check =
        check_deviation_bound(m, 1, std::vector<int>{0}, std::vector<std::uint8_t>{0}, 2.0, 1000,
                              50, 7);
    const double ln_n = std::log(1000.0);
    CHECK(check.bound_value == doctest::Approx(2.0 * 2 * 2.0 * ln_n * ln_n / 1e6).epsilon(1e-12));
    CHECK(check.bound_value == doctest::Approx(3.817e-4).epsilon(1e-3));
    CHECK(check.n == 1000);
    CHECK(check.replications == 50);
    CHECK(check.empirical_freq >= 0.0);
    CHECK(check.empirical_freq <= 1.0);
}

TEST_CASE("a bound of one or more is vacuously satisfied") {
    const FactorizedModel m = builtin_model("markov_chain_window(2)");
    // delta = 0.2, n = 150 >= exp(5): bound = 2*2*0.2*(ln 150)^2/150^0.2 > 1
    const BoundCheck check = check_deviation_bound(
        m, 0, std::vector<int>{1}, std::vector<std::uint8_t>{0}, 0.2, 150, 20, 3);
    CHECK(check.bound_value >= 1.0);
    CHECK(check.satisfied);
}

TEST_CASE("preconditions are enforced") {
    const FactorizedModel m = builtin_model("markov_chain_window(3)");
    // n below exp(1/delta)
    CHECK_THROWS_AS(check_deviation_bound(m, 0, std::vector<int>{1},
                                          std::vector<std::uint8_t>{0}, 0.1, 100, 10, 1),
                    ArgumentError);
    // adjacent ones have probability zero
    CHECK_THROWS_AS(check_deviation_bound(m, 2, std::vector<int>{0, 1},
                                          std::vector<std::uint8_t>{1, 1}, 2.0, 1000, 10, 1),
                    ArgumentError);
    CHECK_THROWS_AS(check_deviation_bound(m, 0, std::vector<int>{1},
                                          std::vector<std::uint8_t>{0}, 2.0, 1000, 0, 1),
                    ArgumentError);
}

TEST_CASE("empirical exceedance stays under the bound on small sweeps") {
    // reduced-size version of the acceptance sweep
    const FactorizedModel chain = builtin_model("markov_chain_window(3)");
    for (const double delta : {1.5, 2.0}) {
        const BoundCheck check = check_deviation_bound(
            chain, 1, std::vector<int>{0}, std::vector<std::uint8_t>{0}, delta, 1000, 400, 2024, 4);
        CHECK(check.satisfied);
        CHECK(check.empirical_freq <= check.bound_value);
    }
}

TEST_CASE("exceedance frequency does not grow with n") {
    const FactorizedModel m = builtin_model("markov_chain_window(3)");
    const int reps = 600;
    const BoundCheck small = check_deviation_bound(
        m, 1, std::vector<int>{0}, std::vector<std::uint8_t>{0}, 1.5, 1000, reps, 5, 4);
    const BoundCheck large = check_deviation_bound(
        m, 1, std::vector<int>{0}, std::vector<std::uint8_t>{0}, 1.5, 5000, reps, 5, 4);
    const double se =
        std::sqrt(std::max(small.empirical_freq * (1.0 - small.empirical_freq), 1e-9) / reps);
    CHECK(large.empirical_freq <= small.empirical_freq + 2.0 * se);
}

TEST_CASE("replications are deterministic and thread-count independent") {
    const FactorizedModel m = builtin_model("markov_chain_window(4)");
    const BoundCheck a = check_deviation_bound(m, 1, std::vector<int>{0},
                                               std::vector<std::uint8_t>{1}, 2.0, 500, 200, 9, 1);
    const BoundCheck b = check_deviation_bound(m, 1, std::vector<int>{0},
                                               std::vector<std::uint8_t>{1}, 2.0, 500, 200, 9, 3);
    CHECK(a.empirical_freq == b.empirical_freq);
}

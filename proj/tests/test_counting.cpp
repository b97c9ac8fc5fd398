#include <doctest.h>

#include <vector>

#include "helpers.hpp"
#include "mrfse/counting.hpp"
#include "mrfse/errors.hpp"
#include "oracles.hpp"

using namespace mrfse;
using testing_helpers::make_sample;

namespace {

// rows (x1,x2,x3) from the worked example
Sample four_row_sample() {
    return make_sample(2, {"x1", "x2", "x3"}, {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 1, 1}});
}

}  // namespace

TEST_CASE("build_counts on the 4-row example") {
    const Sample s = four_row_sample();
    const std::vector<int> w{1};
    const CountTable t = build_counts(s, 0, w);

    CHECK(t.total() == 4);
    REQUIRE(t.row_count() == 2);
    // rows in lexicographic config order: (x2=0) then (x2=1)
    CHECK(t.row_config(0)[0] == 0);
    CHECK(t.row_total(0) == 1);
    CHECK(t.row_config(1)[0] == 1);
    CHECK(t.row_total(1) == 3);         // N(x2=1) = 3
    CHECK(t.row_counts(1)[1] == 2);     // N(x1=1, x2=1) = 2
}

TEST_CASE("build_counts with empty conditioning set gives marginals") {
    const Sample s = four_row_sample();
    const CountTable t = build_counts(s, 0, std::vector<int>{});
    REQUIRE(t.row_count() == 1);
    CHECK(t.row_counts(0)[0] == 2);
    CHECK(t.row_counts(0)[1] == 2);
}

TEST_CASE("build_counts degenerate single observation") {
    const Sample s = make_sample(2, {"a", "b"}, {{1, 0}});
    const CountTable t = build_counts(s, 0, std::vector<int>{1});
    REQUIRE(t.row_count() == 1);
    CHECK(t.row_total(0) == 1);
    CHECK(t.row_counts(0)[1] == 1);
}

TEST_CASE("build_counts argument validation") {
    const Sample s = four_row_sample();
    CHECK_THROWS_AS(build_counts(s, 0, std::vector<int>{0}), ArgumentError);
    CHECK_THROWS_AS(build_counts(s, 0, std::vector<int>{7}), ArgumentError);
    CHECK_THROWS_AS(build_counts(s, 9, std::vector<int>{}), ArgumentError);
    CHECK_THROWS_AS(build_counts(s, 0, std::vector<int>{1, 1}), ArgumentError);
}

TEST_CASE("empirical_conditional matches direct ratios") {
    const Sample s = four_row_sample();
    const CountTable t = build_counts(s, 0, std::vector<int>{1});
    Configuration x2_one{{1}, {1}};
    CHECK(empirical_conditional(t, x2_one, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(empirical_conditional(t, x2_one, 0) == doctest::Approx(1.0 / 3.0));

    const CountTable t13 = build_counts(s, 0, std::vector<int>{2});
    Configuration x3_one{{2}, {1}};
    CHECK(empirical_conditional(t13, x3_one, 1) == 1.0);
}

TEST_CASE("empirical_conditional on a deterministic column") {
    const Sample s = make_sample(2, {"a"}, {{1}, {1}, {1}});
    const CountTable t = build_counts(s, 0, std::vector<int>{});
    CHECK(empirical_conditional(t, Configuration{}, 1) == 1.0);
}

TEST_CASE("empirical_conditional rejects unseen configurations") {
    const Sample s = make_sample(2, {"a", "b"}, {{0, 0}, {1, 0}});
    const CountTable t = build_counts(s, 0, std::vector<int>{1});
    Configuration never_seen{{1}, {1}};
    CHECK_THROWS_AS(empirical_conditional(t, never_seen, 0), UndefinedConditionalError);
}

TEST_CASE("conditionals over a row sum to one") {
    const Sample s = testing_helpers::random_sample(21, 4, 60, 3);
    const CountTable t = build_counts(s, 2, std::vector<int>{0, 3});
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        Configuration config;
        config.vertices = t.cond_set();
        const auto bytes = t.row_config(r);
        config.symbols.assign(bytes.begin(), bytes.end());
        double sum = 0.0;
        for (int a = 0; a < t.alphabet_size(); ++a)
            sum += empirical_conditional(t, config, static_cast<std::uint8_t>(a));
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("counts equal the naive nested-loop recount on random samples") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        SplitMix64 rng(seed * 7919 + 3);
        const int p = 2 + static_cast<int>(rng.next_below(5));       // <= 6
        const int a = 2 + static_cast<int>(rng.next_below(2));       // <= 3
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next_below(200));
        const Sample s = testing_helpers::random_sample(seed + 1000, p, n, a);

        for (int v = 0; v < p; ++v) {
            std::vector<int> pool;
            for (int u = 0; u < p; ++u)
                if (u != v) pool.push_back(u);
            for (std::uint32_t bits = 0; bits < (1u << pool.size()); ++bits) {
                std::vector<int> w;
                for (std::size_t i = 0; i < pool.size(); ++i)
                    if (bits & (1u << i)) w.push_back(pool[i]);

                const CountTable t = build_counts(s, v, w);
                const auto expected = oracle::naive_counts(s, v, w);
                REQUIRE(t.row_count() == expected.size());
                std::size_t r = 0;
                std::int64_t grand_total = 0;
                for (const auto& [config, counts] : expected) {
                    const auto got_config = t.row_config(r);
                    for (std::size_t i = 0; i < w.size(); ++i)
                        CHECK(got_config[i] == config[i]);
                    const auto got_counts = t.row_counts(r);
                    for (int sym = 0; sym < a; ++sym)
                        CHECK(got_counts[sym] == counts[sym]);
                    grand_total += t.row_total(r);
                    ++r;
                }
                CHECK(grand_total == s.n);
                // row count never exceeds min(n, |A|^|W|)
                double cells = 1;
                for (std::size_t i = 0; i < w.size(); ++i) cells *= a;
                CHECK(t.row_count() <= static_cast<std::size_t>(std::min<double>(
                                            static_cast<double>(s.n), cells)));
            }
        }
    }
}

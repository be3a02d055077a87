#include <doctest.h>

#include <cmath>
#include <random>

#include "primeperiod/error.hpp"
#include "primeperiod/lnseq.hpp"

using namespace primeperiod;

TEST_CASE("log_gaps") {
    CHECK(log_gaps({{1}, 2}) == std::vector<double>{0.0});
    const auto l = log_gaps({{2, 4}, 3});
    CHECK(l[1] == doctest::Approx(2 * l[0]).epsilon(1e-15));

    const auto six = log_gaps(gaps(first_n_primes(6)));
    const std::vector<double> expected{0.0, 0.6931471805599453, 0.6931471805599453,
                                       1.3862943611198906, 0.6931471805599453};
    REQUIRE(six.size() == expected.size());
    for (std::size_t i = 0; i < six.size(); ++i) CHECK(six[i] == doctest::Approx(expected[i]));

    CHECK_THROWS_AS(log_gaps({{2, 0}, 3}), DomainError);
}

TEST_CASE("ln_sequence") {
    const auto g = gaps(first_n_primes(8));
    CHECK(g.gaps == std::vector<std::uint64_t>{1, 2, 2, 4, 2, 4, 2});
    const auto seq = ln_sequence(g, 10.0);
    CHECK(seq.values == std::vector<std::int64_t>{7, 14, 28, 35, 49, 55});
    CHECK(seq.dropped_below_one == 1);
    CHECK(seq.dropped_duplicates == 0);

    CHECK(ln_sequence({{1}, 2}, 10.0).values.empty());
    CHECK(ln_sequence({{2, 2}, 3}, 10.0).values == std::vector<std::int64_t>{7, 14});

    CHECK_THROWS_AS(ln_sequence(g, 0.0), InvalidArgumentError);
    CHECK_THROWS_AS(ln_sequence(g, -1.0), InvalidArgumentError);
}

TEST_CASE("ln_sequence drops duplicates produced by coarse scales") {
    // scale 1: ln 2 -> 0.69 -> 1, 2 ln 2 -> 1.39 -> 1 (duplicate), 3 ln 2 -> 2.08 -> 2
    const auto seq = ln_sequence({{2, 2, 2}, 4}, 1.0);
    CHECK(seq.values == std::vector<std::int64_t>{1, 2});
    CHECK(seq.dropped_duplicates == 1);
}

TEST_CASE("ln_sequence properties on the first 10000 primes") {
    const auto g = gaps(first_n_primes(10000));
    const auto scaled = scaled_cumulative_log_gaps(g, 10.0);
    const auto doubled = scaled_cumulative_log_gaps(g, 20.0);
    for (std::size_t i = 0; i < scaled.size(); ++i) CHECK(doubled[i] == 2 * scaled[i]);

    const auto seq = ln_sequence(g, 10.0);
    CHECK(seq.dropped_duplicates == 0);
    CHECK(seq.values.size() == g.gaps.size() - 1);
    // Retained element k corresponds to gap index k + 1 (the leading 0 is dropped).
    for (std::size_t k = 0; k < seq.values.size(); ++k) {
        CHECK(std::abs(static_cast<double>(seq.values[k]) - scaled[k + 1]) <= 0.5);
        if (k) CHECK(seq.values[k] > seq.values[k - 1]);
    }
    CHECK(seq.values.front() >= 1);
}

TEST_CASE("ln_sequence monotone with step >= round(scale ln 2) - 1 for gaps >= 2") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> half_gap(1, 40);
    for (int trial = 0; trial < 50; ++trial) {
        GapSequence g;
        for (int i = 0; i < 300; ++i) g.gaps.push_back(2 * static_cast<std::uint64_t>(half_gap(rng)));
        g.source_count = g.gaps.size() + 1;
        const auto seq = ln_sequence(g, 10.0);
        CHECK(seq.values.size() == g.gaps.size());
        CHECK(seq.dropped_duplicates == 0);
        for (std::size_t k = 1; k < seq.values.size(); ++k)
            CHECK(seq.values[k] - seq.values[k - 1] >= std::llround(10 * std::log(2.0)) - 1);
    }
}

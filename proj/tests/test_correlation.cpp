#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "primeperiod/correlation.hpp"
#include "primeperiod/error.hpp"

using namespace primeperiod;

namespace {

TelegraphSignal from_values(const std::vector<int>& v, std::int64_t start = 0) {
    TelegraphSignal s;
    s.start_index = start;
    for (int x : v) s.values.push_back(static_cast<std::int8_t>(x));
    return s;
}

AutocorrelationSeries model_series(double q, double period, std::size_t max_lag, double step = 1.0) {
    AutocorrelationSeries s;
    for (std::size_t t = 0; t <= max_lag; ++t)
        s.values.push_back(model_autocorrelation(q, period, static_cast<double>(t) * step));
    return s;
}

}  // namespace

TEST_CASE("autocorrelation of an alternating signal") {
    std::vector<int> v;
    for (int i = 0; i < 100; ++i) v.push_back(i % 2 ? -1 : 1);
    const auto s = from_values(v);
    const auto acf = autocorrelation(s, -1, 100, 20);
    CHECK(acf.normalized);
    CHECK(acf.variance_at_zero == 1.0);
    for (std::size_t t = 0; t <= 20; ++t) CHECK(acf.values[t] == (t % 2 ? -1.0 : 1.0));
}

TEST_CASE("autocorrelation of a period-4 square wave matches brute force") {
    std::vector<int> v;
    for (int i = 0; i < 64; ++i) v.push_back((i / 2) % 2 ? -1 : 1);
    const auto acf = autocorrelation(from_values(v), -1, 64, 8);
    const auto naive = oracle::naive_acf(v, 8);
    for (std::size_t t = 0; t <= 8; ++t) CHECK(acf.values[t] == doctest::Approx(naive[t]).epsilon(1e-12));
    CHECK(acf.values[2] == -1.0);
    // Finite window: 1/63 from the pair sum, reduced by the subwindow means.
    CHECK(acf.values[1] == doctest::Approx(naive[1]));
    CHECK(std::abs(acf.values[1]) < 0.05);
}

TEST_CASE("autocorrelation errors") {
    const auto flat = from_values(std::vector<int>(50, 1));
    CHECK_THROWS_AS(autocorrelation(flat, -1, 50, 5), ZeroVarianceError);
    std::vector<int> v;
    for (int i = 0; i < 50; ++i) v.push_back(i % 3 ? 1 : -1);
    const auto s = from_values(v, 10);
    CHECK_THROWS_AS(autocorrelation(s, 9, 20, 5), WindowTooSmallError);
    CHECK_THROWS_AS(autocorrelation(s, 0, 40, 5), InvalidArgumentError);  // starts before domain
    CHECK_THROWS_AS(autocorrelation(s, 20, 70, 5), InvalidArgumentError);  // ends after domain
    CHECK_NOTHROW(autocorrelation(s, 9, 60, 24));
}

TEST_CASE("autocorrelation uses only the open window") {
    std::vector<int> v(40, 1);
    for (int i = 20; i < 40; i += 3) v[static_cast<std::size_t>(i)] = -1;
    const auto s = from_values(v, 100);
    // Window (119, 140) sees values 120..139 only.
    const std::vector<int> inner(v.begin() + 20, v.end());
    const auto acf = autocorrelation(s, 119, 140, 6);
    const auto naive = oracle::naive_acf(inner, 6);
    for (std::size_t t = 0; t <= 6; ++t) CHECK(acf.values[t] == doctest::Approx(naive[t]).epsilon(1e-12));
}

TEST_CASE("random signals: bounds, brute force and sign flip") {
    std::mt19937_64 rng(2024);
    std::bernoulli_distribution coin(0.3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<int> v;
        int sign = 1;
        for (int i = 0; i < 200; ++i) {
            if (coin(rng)) sign = -sign;
            v.push_back(sign);
        }
        const auto s = from_values(v);
        const auto acf = autocorrelation(s, -1, 200, 60);
        const auto flipped = autocorrelation(s.negated(), -1, 200, 60);
        const auto naive = oracle::naive_acf(v, 60);
        CHECK(acf.values[0] == 1.0);
        for (std::size_t t = 0; t <= 60; ++t) {
            CHECK(std::abs(acf.values[t]) <= 1 + 1e-9);
            CHECK(std::abs(acf.values[t] - naive[t]) <= 1e-12);
            CHECK(flipped.values[t] == acf.values[t]);
        }
    }
}

TEST_CASE("model_autocorrelation") {
    for (double q : {0.0, 0.1, 0.25, 0.5, 0.9}) CHECK(model_autocorrelation(q, 7.0, 0.0) == 1.0);
    for (double tau = 0; tau < 10; tau += 0.5)
        CHECK(model_autocorrelation(0.5, 10.0, tau) == doctest::Approx(1 - tau / 10));
    for (double tau = 10; tau < 60; tau += 0.7) CHECK(model_autocorrelation(0.5, 10.0, tau) == 0.0);
    CHECK(model_autocorrelation(0.25, 10.0, 10.0) == -0.5);
    CHECK(model_autocorrelation(0.25, 10.0, 15.0) == doctest::Approx(0.5 * -0.5 + 0.5 * 0.25));
    CHECK_THROWS_AS(model_autocorrelation(0.25, 0.0, 1.0), InvalidArgumentError);
    CHECK_THROWS_AS(model_autocorrelation(0.25, 1.0, -1.0), InvalidArgumentError);
}

TEST_CASE("model_autocorrelation is continuous at the knots") {
    const double period = 10.0;
    for (double q : {0.0, 0.25, 0.5, 0.75}) {
        for (int n = 1; n <= 6; ++n) {
            const double tau = n * period;
            const double r = 2 * q - 1;
            // Left branch (interval n) evaluated at its right end.
            const double left = (n - tau / period) * std::pow(r, n - 1) + (tau / period - (n - 1)) * std::pow(r, n);
            const double right = model_autocorrelation(q, period, tau);
            CHECK(std::abs(left - right) <= 1e-12);
            CHECK(std::abs(right - std::pow(r, n)) <= 1e-12);
        }
    }
}

TEST_CASE("ensemble_model_acf") {
    ModelTelegraphParams p;
    p.period = 10;
    p.length = 300;

    const auto none = ensemble_model_acf(p, 0.0, 200, 30, 5);
    for (double v : none.series.values) CHECK(v == 1.0);

    // Reproducible under a fixed seed regardless of threading.
    const auto a = ensemble_model_acf(p, 0.75, 500, 30, 99);
    const auto b = ensemble_model_acf(p, 0.75, 500, 30, 99);
    CHECK(a.series.values == b.series.values);
    CHECK(a.standard_error == b.standard_error);

    CHECK_THROWS_AS(ensemble_model_acf(p, 0.5, 99, 10, 1), InvalidArgumentError);
    CHECK_THROWS_AS(ensemble_model_acf(p, 0.5, 100, 300, 1), WindowTooSmallError);
}

TEST_CASE("ensemble matches the analytic curve with flip probability 1 - q") {
    ModelTelegraphParams p;
    p.period = 10;
    p.length = 400;
    for (double q : {0.0, 0.25}) {
        const auto e = ensemble_model_acf(p, 1 - q, 4000, 40, 17);
        for (std::size_t t = 0; t <= 40; ++t) {
            const double expected = model_autocorrelation(q, 10.0, static_cast<double>(t));
            CHECK(std::abs(e.series.values[t] - expected) <= 3 * e.standard_error[t] + 1e-12);
        }
    }
}

TEST_CASE("rescale") {
    const auto s = model_series(0.0, 5.0, 30);
    const auto same = rescale(s, 1.0, 1.0);
    CHECK(same.values == s.values);
    CHECK(same.normalized);

    const auto stretched = rescale(s, 2.0, 1.0);
    CHECK(stretched.max_lag() == 60);
    CHECK(estimate_period(s, PeriodMethod::first_minimum).half_period == 5);
    CHECK(estimate_period(stretched, PeriodMethod::first_minimum).half_period == 10);

    const auto scaled = rescale(s, 1.0, 0.5);
    CHECK_FALSE(scaled.normalized);
    CHECK(scaled.values[5] == -0.5);
    CHECK_THROWS_AS(rescale(s, 0.0, 1.0), InvalidArgumentError);
}

TEST_CASE("estimate_period") {
    const auto tri = model_series(0.0, 10.0, 200);
    const auto fm = estimate_period(tri, PeriodMethod::first_minimum);
    CHECK(fm.half_period == 10);
    CHECK(fm.uncertainty >= 1);
    const auto sp = estimate_period(tri, PeriodMethod::spectral);
    CHECK(std::abs(sp.half_period - 10) <= 0.2);
    CHECK(sp.uncertainty >= 1);
    CHECK(sp.fundamental_period == doctest::Approx(std::exp(sp.half_period / 10)));

    CHECK_THROWS_AS(estimate_period(model_series(0.5, 10.0, 100), PeriodMethod::first_minimum),
                    NoMinimumError);
    // Not enough lags for three oscillations.
    CHECK_THROWS_AS(estimate_period(model_series(0.0, 10.0, 40), PeriodMethod::spectral), NoPeakError);

    // A slow monotone decay has no resolvable oscillation.
    AutocorrelationSeries decay;
    for (int t = 0; t <= 60; ++t) decay.values.push_back(std::exp(-t / 40.0));
    CHECK_THROWS_AS(estimate_period(decay, PeriodMethod::spectral), NoPeakError);

    PeriodOptions even;
    even.smoothing_window = 2;
    CHECK_THROWS_AS(estimate_period(tri, PeriodMethod::first_minimum, even), InvalidArgumentError);

    // Shallow dips below the prominence are skipped.
    AutocorrelationSeries bumpy;
    bumpy.values = {1.0, 0.8, 0.6, 0.59, 0.595, 0.3, -0.2, -0.5, -0.2, 0.1};
    PeriodOptions raw;
    raw.smoothing_window = 1;
    CHECK(estimate_period(bumpy, PeriodMethod::first_minimum, raw).half_period == 7);

    CHECK(parse_period_method("spectral") == PeriodMethod::spectral);
    CHECK_THROWS_AS(parse_period_method("median"), InvalidArgumentError);
}

TEST_CASE("recover_fundamental_period") {
    CHECK(recover_fundamental_period(0.0, 10.0) == 1.0);
    CHECK(recover_fundamental_period(10 * std::log(8.0), 10.0) == doctest::Approx(8.0).epsilon(1e-14));
    CHECK_THROWS_AS(recover_fundamental_period(1.0, 0.0), InvalidArgumentError);
}

TEST_CASE("linear_decay_endpoint") {
    AutocorrelationSeries line;
    for (int t = 0; t <= 9; ++t) line.values.push_back(1 - t / 10.0);
    CHECK(linear_decay_endpoint(line) == 9);

    CHECK(linear_decay_endpoint(model_series(0.25, 6.0, 30)) == 6);

    AutocorrelationSeries rising;
    rising.values = {1.0, 1.1, 1.2, 1.3};
    CHECK_THROWS_AS(linear_decay_endpoint(rising), NoLinearSegmentError);
    AutocorrelationSeries zigzag;
    zigzag.values = {1.0, -1.0, 1.0, -1.0};
    CHECK_THROWS_AS(linear_decay_endpoint(zigzag), NoLinearSegmentError);

    auto unnormalized = line;
    unnormalized.normalized = false;
    CHECK_THROWS_AS(linear_decay_endpoint(unnormalized), InvalidArgumentError);
    CHECK_THROWS_AS(linear_decay_endpoint(line, 1.0), InvalidArgumentError);
}

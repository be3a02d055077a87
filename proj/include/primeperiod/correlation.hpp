#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "primeperiod/telegraph.hpp"

namespace primeperiod {

// values[tau] for tau = 0..max_lag in grid units.
struct AutocorrelationSeries {
    std::vector<double> values;
    std::int64_t window_start = 0;  // exclusive
    std::int64_t window_end = 0;    // exclusive
    double variance_at_zero = 0.0;
    bool normalized = true;

    std::size_t max_lag() const noexcept { return values.empty() ? 0 : values.size() - 1; }
};

// Windowed estimate of <v(n)v(n+tau)> - <v(n)><v(n+tau)> over all n with n
// and n + tau strictly inside (window_start, window_end). Each lag is
// normalized by the product of the standard deviations of its two
// subwindows, so C(0) = 1 and |C| <= 1.
AutocorrelationSeries autocorrelation(const TelegraphSignal& signal,
                                      std::int64_t window_start,
                                      std::int64_t window_end,
                                      std::size_t max_lag);

// Piecewise-linear correlation of the randomly phased telegraph model with
// persistence q and event period T.
double model_autocorrelation(double q, double period, double tau);

struct EnsembleAcf {
    AutocorrelationSeries series;
    std::vector<double> standard_error;  // of the ensemble mean, per lag
    std::size_t realizations = 0;
};

// Monte Carlo average of v(n)v(n+tau) over realizations of the model
// telegraph. Realization i uses seed + i.
EnsembleAcf ensemble_model_acf(const ModelTelegraphParams& params,
                               double flip_probability,
                               std::size_t realizations,
                               std::size_t max_lag,
                               std::uint64_t seed);

// Stretches the lag axis by `lag_factor` (re-interpolated linearly onto
// integer lags) and multiplies values by `amplitude_factor`.
AutocorrelationSeries rescale(const AutocorrelationSeries& series,
                              double lag_factor,
                              double amplitude_factor);

enum class PeriodMethod { first_minimum, spectral };

std::string_view to_string(PeriodMethod m) noexcept;
PeriodMethod parse_period_method(std::string_view s);

struct PeriodOptions {
    std::size_t smoothing_window = 3;
    double prominence = 0.02;
};

struct PeriodEstimate {
    double half_period;  // T_hat, in lag units
    double uncertainty;
    PeriodMethod method;
    double fundamental_period;  // exp(T_hat / scale)
    double scale_used;
};

PeriodEstimate estimate_period(const AutocorrelationSeries& series,
                               PeriodMethod method,
                               const PeriodOptions& options = {},
                               double scale = 10.0);

double recover_fundamental_period(double half_period, double scale);

// Largest k such that every least-squares line through lags 0..k' for
// 2 <= k' <= k has R^2 >= r2_threshold and negative slope.
std::size_t linear_decay_endpoint(const AutocorrelationSeries& series,
                                  double r2_threshold = 0.98);

}  // namespace primeperiod

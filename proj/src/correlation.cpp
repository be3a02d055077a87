#include "primeperiod/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "primeperiod/error.hpp"
#include "primeperiod/spectrum.hpp"

namespace primeperiod {

AutocorrelationSeries autocorrelation(const TelegraphSignal& signal,
                                      std::int64_t window_start,
                                      std::int64_t window_end,
                                      std::size_t max_lag) {
    const std::int64_t first = window_start + 1;
    const std::int64_t last = window_end - 1;
    if (signal.size() == 0 || first < signal.start_index || last > signal.end_index())
        throw InvalidArgumentError("autocorrelation: window (" + std::to_string(window_start) +
                                   ", " + std::to_string(window_end) +
                                   ") not inside signal domain");
    if (last - first + 1 < 2)
        throw WindowTooSmallError("autocorrelation: window holds fewer than 2 points");
    const auto width = static_cast<std::size_t>(last - first + 1);
    if (2 * max_lag >= width)
        throw WindowTooSmallError("autocorrelation: max_lag " + std::to_string(max_lag) +
                                  " must be < half the window length " + std::to_string(width));

    const std::int8_t* v = signal.values.data() + (first - signal.start_index);
    std::vector<std::int64_t> prefix(width + 1, 0);
    for (std::size_t i = 0; i < width; ++i) prefix[i + 1] = prefix[i] + v[i];

    AutocorrelationSeries out;
    out.window_start = window_start;
    out.window_end = window_end;
    out.values.resize(max_lag + 1);

    // Everything below stays in integer sums until the final ratio, so
    // symmetric inputs give exactly symmetric results.
    for (std::size_t tau = 0; tau <= max_lag; ++tau) {
        const auto count = static_cast<std::int64_t>(width - tau);
        const std::int64_t sum_a = prefix[width - tau] - prefix[0];
        const std::int64_t sum_b = prefix[width] - prefix[tau];
        std::int64_t sum_ab = 0;
        for (std::size_t i = 0; i + tau < width; ++i) sum_ab += v[i] * v[i + tau];

        const double cov = static_cast<double>(count * sum_ab - sum_a * sum_b);
        const double var_a = static_cast<double>(count * count - sum_a * sum_a);
        const double var_b = static_cast<double>(count * count - sum_b * sum_b);
        if (tau == 0) {
            if (var_a == 0.0)
                throw ZeroVarianceError("autocorrelation: signal is constant on the window");
            out.variance_at_zero = var_a / static_cast<double>(count * count);
            out.values[0] = 1.0;
            continue;
        }
        out.values[tau] = (var_a > 0 && var_b > 0) ? cov / std::sqrt(var_a * var_b) : 0.0;
    }
    return out;
}

double model_autocorrelation(double q, double period, double tau) {
    if (!(period > 0)) throw InvalidArgumentError("model_autocorrelation: period must be > 0");
    if (!(tau >= 0)) throw InvalidArgumentError("model_autocorrelation: tau must be >= 0");
    const double ratio = tau / period;
    const double n = std::floor(ratio) + 1;
    const double r = 2 * q - 1;
    return (n - ratio) * std::pow(r, n - 1) + (ratio - (n - 1)) * std::pow(r, n);
}

EnsembleAcf ensemble_model_acf(const ModelTelegraphParams& params,
                               double flip_probability,
                               std::size_t realizations,
                               std::size_t max_lag,
                               std::uint64_t seed) {
    params.validate();
    if (realizations < 100)
        throw InvalidArgumentError("ensemble_model_acf: need at least 100 realizations");
    if (max_lag >= params.length)
        throw WindowTooSmallError("ensemble_model_acf: max_lag must be < signal length");

    ModelTelegraphParams draw = params;
    draw.phase.reset();
    const std::size_t lags = max_lag + 1;
    std::vector<double> per_realization(realizations * lags);

    const auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            const auto sig = simulate_model_telegraph(draw, flip_probability, seed + r);
            const std::int8_t* v = sig.values.data();
            const std::size_t len = sig.size();
            for (std::size_t tau = 0; tau < lags; ++tau) {
                std::int64_t sum = 0;
                for (std::size_t i = 0; i + tau < len; ++i) sum += v[i] * v[i + tau];
                per_realization[r * lags + tau] =
                    static_cast<double>(sum) / static_cast<double>(len - tau);
            }
        }
    };
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (realizations + workers - 1) / workers;
        for (std::size_t b = 0; b < realizations; b += chunk)
            pool.emplace_back(work, b, std::min(realizations, b + chunk));
    }

    EnsembleAcf out;
    out.realizations = realizations;
    out.series.window_start = -1;
    out.series.window_end = static_cast<std::int64_t>(params.length);
    out.series.values.assign(lags, 0.0);
    out.standard_error.assign(lags, 0.0);
    const auto n = static_cast<double>(realizations);
    for (std::size_t tau = 0; tau < lags; ++tau) {
        double mean = 0.0;
        for (std::size_t r = 0; r < realizations; ++r) mean += per_realization[r * lags + tau];
        mean /= n;
        double ss = 0.0;
        for (std::size_t r = 0; r < realizations; ++r) {
            const double d = per_realization[r * lags + tau] - mean;
            ss += d * d;
        }
        out.series.values[tau] = mean;
        out.standard_error[tau] = std::sqrt(ss / (n - 1) / n);
    }
    const double c0 = out.series.values[0];
    out.series.variance_at_zero = c0;
    for (auto& v : out.series.values) v /= c0;
    for (auto& se : out.standard_error) se /= c0;
    return out;
}

AutocorrelationSeries rescale(const AutocorrelationSeries& series,
                              double lag_factor,
                              double amplitude_factor) {
    if (!(lag_factor > 0) || !(amplitude_factor > 0))
        throw InvalidArgumentError("rescale: factors must be > 0");
    if (series.values.empty()) throw InvalidArgumentError("rescale: empty series");

    const std::size_t src_max = series.max_lag();
    const auto dst_max =
        static_cast<std::size_t>(std::floor(static_cast<double>(src_max) * lag_factor + 1e-9));
    AutocorrelationSeries out = series;
    out.values.resize(dst_max + 1);
    for (std::size_t lag = 0; lag <= dst_max; ++lag) {
        const double s = static_cast<double>(lag) / lag_factor;
        const auto i = static_cast<std::size_t>(std::floor(s));
        double v;
        if (i >= src_max) {
            v = series.values[src_max];
        } else {
            const double frac = s - static_cast<double>(i);
            v = (1 - frac) * series.values[i] + frac * series.values[i + 1];
        }
        out.values[lag] = amplitude_factor * v;
    }
    out.normalized = series.normalized && amplitude_factor == 1.0;
    return out;
}

std::string_view to_string(PeriodMethod m) noexcept {
    return m == PeriodMethod::first_minimum ? "first-minimum" : "spectral";
}

PeriodMethod parse_period_method(std::string_view s) {
    if (s == "first-minimum") return PeriodMethod::first_minimum;
    if (s == "spectral") return PeriodMethod::spectral;
    throw InvalidArgumentError("unknown period method '" + std::string(s) + "'");
}

namespace {

std::vector<double> moving_average(const std::vector<double>& v, std::size_t window) {
    if (window % 2 == 0) throw InvalidArgumentError("smoothing window must be odd");
    if (window <= 1) return v;
    const std::size_t half = window / 2;
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(v.size() - 1, i + half);
        double sum = 0.0;
        for (std::size_t j = lo; j <= hi; ++j) sum += v[j];
        out[i] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

// Topographic prominence of the local minimum at t.
double minimum_prominence(const std::vector<double>& s, std::size_t t) {
    const double left = *std::max_element(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(t));
    double right = s[t];
    for (std::size_t j = t + 1; j < s.size() && s[j] >= s[t]; ++j) right = std::max(right, s[j]);
    return std::min(left, right) - s[t];
}

}  // namespace

PeriodEstimate estimate_period(const AutocorrelationSeries& series,
                               PeriodMethod method,
                               const PeriodOptions& options,
                               double scale) {
    if (!(scale > 0)) throw InvalidArgumentError("estimate_period: scale must be > 0");
    if (series.values.size() < 3) throw NoMinimumError("estimate_period: series too short");

    PeriodEstimate est{};
    est.method = method;
    est.scale_used = scale;

    if (method == PeriodMethod::first_minimum) {
        const auto s = moving_average(series.values, options.smoothing_window);
        bool found = false;
        for (std::size_t t = 1; t + 1 < s.size() && !found; ++t) {
            if (s[t] < s[t - 1] && s[t] <= s[t + 1] &&
                minimum_prominence(s, t) > options.prominence) {
                est.half_period = static_cast<double>(t);
                found = true;
            }
        }
        if (!found) throw NoMinimumError("estimate_period: no prominent local minimum");
        est.uncertainty = 1.0;
    } else {
        const auto peak = dominant_period(series.values, 1.0, 64);
        if (static_cast<double>(series.max_lag()) < 3 * peak.period)
            throw NoPeakError("estimate_period: fewer than three oscillations in " +
                              std::to_string(series.max_lag()) + " lags");
        est.half_period = peak.period / 2;
        est.uncertainty = std::max(1.0, peak.period_resolution / 2);
    }
    est.fundamental_period = recover_fundamental_period(est.half_period, scale);
    return est;
}

double recover_fundamental_period(double half_period, double scale) {
    if (!(scale > 0)) throw InvalidArgumentError("recover_fundamental_period: scale must be > 0");
    return std::exp(half_period / scale);
}

std::size_t linear_decay_endpoint(const AutocorrelationSeries& series, double r2_threshold) {
    if (!series.normalized)
        throw InvalidArgumentError("linear_decay_endpoint: series must be normalized");
    if (!(r2_threshold > 0 && r2_threshold < 1))
        throw InvalidArgumentError("linear_decay_endpoint: r2_threshold must be in (0, 1)");

    const auto& c = series.values;
    std::size_t endpoint = 0;
    for (std::size_t k = 2; k < c.size(); ++k) {
        const double n = static_cast<double>(k + 1);
        double sx = 0, sy = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            sx += static_cast<double>(i);
            sy += c[i];
        }
        const double mx = sx / n, my = sy / n;
        double sxx = 0, sxy = 0, syy = 0;
        for (std::size_t i = 0; i <= k; ++i) {
            const double dx = static_cast<double>(i) - mx, dy = c[i] - my;
            sxx += dx * dx;
            sxy += dx * dy;
            syy += dy * dy;
        }
        const double slope = sxy / sxx;
        const double r2 = syy > 0 ? (sxy * sxy) / (sxx * syy) : 0.0;
        if (!(slope < 0 && r2 >= r2_threshold)) break;
        endpoint = k;
    }
    if (endpoint == 0) throw NoLinearSegmentError("linear_decay_endpoint: no linear decay from lag 0");
    return endpoint;
}

}  // namespace primeperiod

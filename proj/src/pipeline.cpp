#include "primeperiod/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>

#include "primeperiod/csv.hpp"
#include "primeperiod/error.hpp"

namespace primeperiod {
namespace {

std::int64_t parse_bound(std::string_view s) {
    const std::string text(s);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw InvalidArgumentError("interval bound '" + text + "' is not a number");
    }
    if (used != text.size() || !std::isfinite(v) || v != std::floor(v))
        throw InvalidArgumentError("interval bound '" + text + "' is not an integer");
    return static_cast<std::int64_t>(v);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> lag_axis(std::size_t n) {
    std::vector<double> out(n);
    std::iota(out.begin(), out.end(), 0.0);
    return out;
}

}  // namespace

Interval parse_interval(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw InvalidArgumentError("interval must be start:end, got '" + std::string(text) + "'");
    Interval iv{parse_bound(text.substr(0, colon)), parse_bound(text.substr(colon + 1))};
    if (iv.interior_size() < 1)
        throw InvalidArgumentError("interval " + std::string(text) + " is empty");
    return iv;
}

std::string to_string(const Interval& iv) {
    return std::to_string(iv.start) + ":" + std::to_string(iv.end);
}

void ExperimentConfig::validate() const {
    if (prime_count < 2) throw InvalidArgumentError("prime_count must be >= 2");
    if (!(scale > 0)) throw InvalidArgumentError("scale must be > 0");
    const auto check = [](const Interval& iv, std::size_t lag, const char* what) {
        if (iv.interior_size() < 2) throw InvalidArgumentError(std::string(what) + " interval is empty");
        if (2 * static_cast<std::int64_t>(lag) >= iv.interior_size())
            throw InvalidArgumentError(std::string(what) + ": max lag must be < interval length / 2");
    };
    check(fig1_interval, max_lag, "fig1");
    check(fig2_interval, max_lag, "fig2");
    for (const auto& iv : k2_intervals) check(iv, k2_max_lag, "k2");
    model.validate();
    const double p = effective_flip_probability();
    if (!(p >= 0 && p <= 1)) throw InvalidArgumentError("flip probability must be in [0, 1]");
    if (!(rossler_grid_step > 0)) throw InvalidArgumentError("rossler grid step must be > 0");
}

std::string ExperimentConfig::canonical() const {
    std::map<std::string, std::string> kv;
    kv["prime_count"] = std::to_string(prime_count);
    kv["scale"] = fmt(scale);
    kv["fig1_interval"] = to_string(fig1_interval);
    kv["fig2_interval"] = to_string(fig2_interval);
    kv["max_lag"] = std::to_string(max_lag);
    for (std::size_t i = 0; i < k2_intervals.size(); ++i)
        kv["k2_interval_" + std::to_string(i)] = to_string(k2_intervals[i]);
    kv["k2_max_lag"] = std::to_string(k2_max_lag);
    kv["rossler_a"] = fmt(rossler.a);
    kv["rossler_b"] = fmt(rossler.b);
    kv["rossler_c"] = fmt(rossler.c);
    kv["threshold"] = fmt(rossler.threshold_x);
    kv["initial"] = fmt(integration.initial[0]) + "," + fmt(integration.initial[1]) + "," +
                    fmt(integration.initial[2]);
    kv["dt"] = fmt(integration.dt);
    kv["t_end"] = fmt(integration.t_end);
    kv["transient"] = fmt(integration.transient);
    kv["rossler_grid_step"] = fmt(rossler_grid_step);
    kv["rossler_max_lag"] = std::to_string(rossler_max_lag);
    kv["period_T"] = fmt(model.period);
    kv["q"] = fmt(model.persistence_q);
    kv["model_length"] = std::to_string(model.length);
    kv["model_grid_step"] = fmt(model.grid_step);
    kv["flip_prob"] = fmt(effective_flip_probability());
    kv["realizations"] = std::to_string(realizations);
    kv["model_max_lag"] = std::to_string(model_max_lag);
    kv["smoothing_window"] = std::to_string(period_options.smoothing_window);
    kv["prominence"] = fmt(period_options.prominence);
    kv["r2_threshold"] = fmt(r2_threshold);
    kv["disagreement_ratio"] = fmt(disagreement_ratio);
    kv["seed"] = std::to_string(seed);
    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    return out;
}

std::string ExperimentConfig::hash() const { return fnv1a_hex(canonical()); }

LnSignal build_ln_signal(std::size_t prime_count, double scale, std::int64_t domain_end) {
    const auto primes = first_n_primes(prime_count);
    auto seq = ln_sequence(gaps(primes), scale);
    if (seq.values.empty() || seq.values.back() < domain_end) {
        // Size the shortfall: grow the prime supply until the scaled
        // cumulative log-gaps reach domain_end.
        std::size_t probe = std::max<std::size_t>(prime_count * 2, 16);
        std::string need = "unknown";
        while (probe <= kDefaultMaxPrimeCount) {
            const auto scaled = scaled_cumulative_log_gaps(gaps(first_n_primes(probe)), scale);
            const auto it = std::find_if(scaled.begin(), scaled.end(), [&](double v) {
                return std::llround(v) >= domain_end;
            });
            if (it != scaled.end()) {
                need = std::to_string(static_cast<std::size_t>(it - scaled.begin()) + 2);
                break;
            }
            probe *= 2;
        }
        throw InsufficientPrimesError("ln-sequence of " + std::to_string(prime_count) +
                                      " primes ends at " +
                                      std::to_string(seq.values.empty() ? 0 : seq.values.back()) +
                                      ", short of " + std::to_string(domain_end) +
                                      "; need at least " + need + " primes");
    }
    auto signal = telegraph_from_changepoints(seq.values, 2, domain_end);
    return {std::move(seq), std::move(signal)};
}

std::optional<PeriodEstimate> IntervalAnalysis::preferred(double lo, double hi) const {
    for (const auto* e : {&first_minimum, &spectral})
        if (*e && (*e)->fundamental_period >= lo && (*e)->fundamental_period <= hi) return *e;
    return first_minimum ? first_minimum : spectral;
}

bool IntervalAnalysis::methods_disagree(double ratio) const {
    if (!first_minimum || !spectral) return false;
    const double a = first_minimum->half_period, b = spectral->half_period;
    return std::abs(a - b) > ratio * std::min(a, b);
}

IntervalAnalysis analyze_interval(const TelegraphSignal& signal, const Interval& iv,
                                  std::size_t max_lag, const PeriodOptions& options,
                                  double scale) {
    IntervalAnalysis out;
    out.interval = iv;
    out.acf = autocorrelation(signal, iv.start, iv.end, max_lag);
    for (auto method : {PeriodMethod::first_minimum, PeriodMethod::spectral}) {
        try {
            auto est = estimate_period(out.acf, method, options, scale);
            (method == PeriodMethod::first_minimum ? out.first_minimum : out.spectral) = est;
        } catch (const Error& e) {
            out.notes.push_back(std::string(to_string(method)) + " estimator: " + e.name() +
                                ": " + e.what());
        }
    }
    return out;
}

RosslerTelegraph run_rossler_telegraph(const ExperimentConfig& config) {
    RosslerTelegraph r;
    r.trajectory = integrate(config.rossler, config.integration);
    r.crossings = upward_crossings(r.trajectory, config.rossler.threshold_x);
    r.fundamental_period = fundamental_period(r.trajectory);
    if (r.crossings.size() < 2)
        throw NoPeakError("Rössler run produced fewer than 2 threshold crossings");
    r.mean_crossing_interval = (r.crossings.back() - r.crossings.front()) /
                               static_cast<double>(r.crossings.size() - 1);
    const double t_last = r.trajectory.time(r.trajectory.size() - 1);
    r.signal = telegraph_from_crossings(r.crossings, r.trajectory.t0, t_last,
                                        config.rossler_grid_step);
    r.acf = autocorrelation(r.signal, r.signal.start_index - 1, r.signal.end_index() + 1,
                            config.rossler_max_lag);
    r.first_minimum = estimate_period(r.acf, PeriodMethod::first_minimum, config.period_options,
                                      1.0);
    return r;
}

Overlay overlay_rossler(const AutocorrelationSeries& rossler_acf, double rossler_minimum,
                        const AutocorrelationSeries& target, double target_minimum,
                        const PeriodOptions& options) {
    Overlay o;
    o.lag_factor = target_minimum / rossler_minimum;
    const double src_depth =
        rossler_acf.values.at(static_cast<std::size_t>(std::llround(rossler_minimum)));
    const double dst_depth = target.values.at(static_cast<std::size_t>(std::llround(target_minimum)));
    if (src_depth < 0 && dst_depth < 0) o.amplitude_factor = dst_depth / src_depth;
    o.rescaled = rescale(rossler_acf, o.lag_factor, o.amplitude_factor);
    if (o.rescaled.values.size() > target.values.size())
        o.rescaled.values.resize(target.values.size());
    try {
        o.aligned_minimum =
            estimate_period(o.rescaled, PeriodMethod::first_minimum, options).half_period;
    } catch (const NoMinimumError&) {
    }
    return o;
}

Fig12Result run_fig1_fig2(const ExperimentConfig& config) {
    config.validate();
    Fig12Result r;
    const std::int64_t domain_end = std::max(config.fig1_interval.end, config.fig2_interval.end);
    const auto ln = build_ln_signal(config.prime_count, config.scale, domain_end);
    r.ln_sequence_length = ln.sequence.values.size();
    if (ln.sequence.dropped_duplicates)
        r.notes.push_back("ln-sequence: " + std::to_string(ln.sequence.dropped_duplicates) +
                          " duplicate entries dropped after rounding");

    r.fig1 = analyze_interval(ln.signal, config.fig1_interval, config.max_lag,
                              config.period_options, config.scale);
    r.fig2 = analyze_interval(ln.signal, config.fig2_interval, config.max_lag,
                              config.period_options, config.scale);
    for (const auto* a : {&r.fig1, &r.fig2}) {
        for (const auto& n : a->notes) r.notes.push_back(to_string(a->interval) + ": " + n);
        if (a->methods_disagree(config.disagreement_ratio))
            r.notes.push_back(to_string(a->interval) +
                              ": first-minimum and spectral estimates differ by more than " +
                              fmt(100 * config.disagreement_ratio) + "%");
    }

    r.rossler = run_rossler_telegraph(config);
    const double ross_min = r.rossler.first_minimum.half_period;
    if (r.fig1.first_minimum)
        r.overlay1 = overlay_rossler(r.rossler.acf, ross_min, r.fig1.acf,
                                     r.fig1.first_minimum->half_period, config.period_options);
    if (r.fig2.first_minimum)
        r.overlay2 = overlay_rossler(r.rossler.acf, ross_min, r.fig2.acf,
                                     r.fig2.first_minimum->half_period, config.period_options);
    return r;
}

Fig3Result run_fig3(const ExperimentConfig& config) {
    config.validate();
    Fig3Result r;
    r.q = config.model.persistence_q;
    r.flip_probability = config.effective_flip_probability();
    r.ensemble = ensemble_model_acf(config.model, r.flip_probability, config.realizations,
                                    config.model_max_lag, config.seed);
    r.analytic.resize(config.model_max_lag + 1);
    for (std::size_t tau = 0; tau <= config.model_max_lag; ++tau) {
        r.analytic[tau] = model_autocorrelation(
            r.q, config.model.period, static_cast<double>(tau) * config.model.grid_step);
        const double se = r.ensemble.standard_error[tau];
        if (se > 0)
            r.max_z = std::max(r.max_z, std::abs(r.ensemble.series.values[tau] - r.analytic[tau]) / se);
    }
    return r;
}

Fig567Result run_fig567(const ExperimentConfig& config, std::span<const Interval> intervals) {
    config.validate();
    if (intervals.empty()) throw InvalidArgumentError("run_fig567: no intervals");
    Fig567Result r;
    std::int64_t end = 0;
    for (const auto& iv : intervals) end = std::max(end, iv.end);
    if (end < 3) throw InsufficientPrimesError("run_fig567: interval end below the first prime");

    const auto primes = primes_up_to(static_cast<std::uint64_t>(end));
    r.primes_used = primes.size();
    if (r.primes_used != config.prime_count)
        r.notes.push_back("K2 run uses the " + std::to_string(r.primes_used) + " primes below " +
                          std::to_string(end) + " (prime_count " +
                          std::to_string(config.prime_count) + " ignored)");
    r.twin_pairs = twin_pairs(primes).size();
    const auto k2 = kill_twins(primes);
    std::vector<std::int64_t> points(k2.values.begin(), k2.values.end());
    const auto signal = telegraph_from_changepoints(points, 2, end);

    for (const auto& iv : intervals) {
        K2Analysis a;
        a.analysis = analyze_interval(signal, iv, config.k2_max_lag, config.period_options, 1.0);
        // T0 for the K2 signal is the lag itself; the signal lives in
        // natural-number coordinates.
        for (auto* e : {&a.analysis.first_minimum, &a.analysis.spectral})
            if (*e) (*e)->fundamental_period = (*e)->half_period;
        try {
            a.decay_endpoint = linear_decay_endpoint(a.analysis.acf, config.r2_threshold);
        } catch (const NoLinearSegmentError& e) {
            a.analysis.notes.push_back(std::string(e.name()) + ": " + e.what());
        }
        a.flip_count = static_cast<std::size_t>(
            std::count_if(signal.change_points.begin(), signal.change_points.end(),
                          [&](std::int64_t c) { return c > iv.start && c < iv.end; }));
        a.k2_primes_inside = static_cast<std::size_t>(
            std::count_if(k2.values.begin(), k2.values.end(), [&](std::uint64_t p) {
                return static_cast<std::int64_t>(p) > iv.start && static_cast<std::int64_t>(p) < iv.end;
            }));
        for (const auto& n : a.analysis.notes) r.notes.push_back(to_string(iv) + ": " + n);
        r.intervals.push_back(std::move(a));
    }
    return r;
}

std::vector<std::filesystem::path> write_fig1_fig2(const Fig12Result& r,
                                                   const ExperimentConfig& config,
                                                   bool fig1, bool fig2) {
    std::vector<std::filesystem::path> written;
    const auto hash = config.hash();
    const auto emit = [&](const IntervalAnalysis& a, const std::optional<Overlay>& o,
                          const char* name) {
        std::vector<CsvColumn> cols{{"tau", lag_axis(a.acf.values.size()), true},
                                    {"c", a.acf.values}};
        if (o) cols.push_back({"c_rossler", o->rescaled.values});
        const auto path = config.output_dir / name;
        write_csv(path, hash, cols);
        written.push_back(path);
    };
    if (fig1) emit(r.fig1, r.overlay1, "fig1.csv");
    if (fig2) emit(r.fig2, r.overlay2, "fig2.csv");
    return written;
}

std::filesystem::path write_fig3(const Fig3Result& r, const ExperimentConfig& config,
                                 std::string_view file_name) {
    std::vector<double> tau(r.analytic.size());
    for (std::size_t i = 0; i < tau.size(); ++i)
        tau[i] = static_cast<double>(i) * config.model.grid_step;
    const std::vector<CsvColumn> cols{{"tau", tau},
                                      {"c_model", r.analytic},
                                      {"c_mc", r.ensemble.series.values},
                                      {"se", r.ensemble.standard_error}};
    const auto path = config.output_dir / std::string(file_name);
    write_csv(path, config.hash(), cols);
    return path;
}

std::filesystem::path write_k2_dataset(const K2Analysis& r, const ExperimentConfig& config,
                                       std::string_view file_name) {
    const std::vector<CsvColumn> cols{{"tau", lag_axis(r.analysis.acf.values.size()), true},
                                      {"c", r.analysis.acf.values}};
    const auto path = config.output_dir / std::string(file_name);
    write_csv(path, config.hash(), cols);
    return path;
}

}  // namespace primeperiod

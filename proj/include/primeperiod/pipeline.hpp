#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "primeperiod/chaos.hpp"
#include "primeperiod/correlation.hpp"
#include "primeperiod/lnseq.hpp"
#include "primeperiod/primes.hpp"
#include "primeperiod/telegraph.hpp"

namespace primeperiod {

// Open interval (start, end) in signal coordinates.
struct Interval {
    std::int64_t start = 0;
    std::int64_t end = 0;

    std::int64_t interior_size() const noexcept { return end - start - 1; }
    bool operator==(const Interval&) const = default;
};

// Parses "start:end"; both bounds accept scientific notation ("9e4:1e5").
Interval parse_interval(std::string_view text);
std::string to_string(const Interval& iv);

struct ExperimentConfig {
    std::size_t prime_count = 10000;
    double scale = kDefaultScale;

    Interval fig1_interval{90000, 100000};
    Interval fig2_interval{1000, 20000};
    std::size_t max_lag = 150;

    std::array<Interval, 3> k2_intervals{{{6000, 6600}, {12000, 13000}, {19000, 20000}}};
    std::size_t k2_max_lag = 60;

    RosslerParams rossler;
    IntegrationSettings integration;
    double rossler_grid_step = 0.1;
    std::size_t rossler_max_lag = 600;

    ModelTelegraphParams model;
    std::optional<double> flip_probability;  // defaults to 1 - persistence q
    std::size_t realizations = 10000;
    std::size_t model_max_lag = 40;

    PeriodOptions period_options;
    double r2_threshold = 0.98;
    double disagreement_ratio = 0.25;

    std::uint64_t seed = 42;
    std::filesystem::path output_dir = ".";

    double effective_flip_probability() const {
        return flip_probability.value_or(1.0 - model.persistence_q);
    }

    void validate() const;
    // Sorted key = value listing of every field except output_dir.
    std::string canonical() const;
    std::string hash() const;
};

// Builds v(n) on [2, domain_end] from the ln-sequence of the first
// `prime_count` primes. Throws InsufficientPrimesError (naming the required
// count) if the ln-sequence stops short of domain_end.
struct LnSignal {
    LnSequence sequence;
    TelegraphSignal signal;
};
LnSignal build_ln_signal(std::size_t prime_count, double scale, std::int64_t domain_end);

struct IntervalAnalysis {
    Interval interval;
    AutocorrelationSeries acf;
    std::optional<PeriodEstimate> first_minimum;
    std::optional<PeriodEstimate> spectral;
    std::vector<std::string> notes;

    // First estimator whose fundamental period lies in [lo, hi], preferring
    // first-minimum; falls back to whichever estimate exists.
    std::optional<PeriodEstimate> preferred(double lo, double hi) const;
    bool methods_disagree(double ratio) const;
};

IntervalAnalysis analyze_interval(const TelegraphSignal& signal, const Interval& iv,
                                  std::size_t max_lag, const PeriodOptions& options,
                                  double scale);

struct RosslerTelegraph {
    Trajectory trajectory;
    std::vector<double> crossings;
    double fundamental_period = 0.0;
    double mean_crossing_interval = 0.0;
    TelegraphSignal signal;
    AutocorrelationSeries acf;
    PeriodEstimate first_minimum{};
};

RosslerTelegraph run_rossler_telegraph(const ExperimentConfig& config);

struct Overlay {
    double lag_factor = 1.0;
    double amplitude_factor = 1.0;
    AutocorrelationSeries rescaled;        // truncated to the target's lag range
    std::optional<double> aligned_minimum;  // first minimum of the rescaled curve
};

// Maps the Rössler telegraph ACF onto the lag grid of `target` so that the
// first minima coincide and have equal depth.
Overlay overlay_rossler(const AutocorrelationSeries& rossler_acf, double rossler_minimum,
                        const AutocorrelationSeries& target, double target_minimum,
                        const PeriodOptions& options);

struct Fig12Result {
    std::size_t ln_sequence_length = 0;
    IntervalAnalysis fig1;
    IntervalAnalysis fig2;
    RosslerTelegraph rossler;
    std::optional<Overlay> overlay1;
    std::optional<Overlay> overlay2;
    std::vector<std::string> notes;
};

Fig12Result run_fig1_fig2(const ExperimentConfig& config);

struct Fig3Result {
    double q = 0.0;
    double flip_probability = 0.0;
    std::vector<double> analytic;
    EnsembleAcf ensemble;
    double max_z = 0.0;  // max |MC - analytic| / SE over lags with SE > 0
};

Fig3Result run_fig3(const ExperimentConfig& config);

struct K2Analysis {
    IntervalAnalysis analysis;
    std::optional<std::size_t> decay_endpoint;
    std::size_t flip_count = 0;
    std::size_t k2_primes_inside = 0;
};

struct Fig567Result {
    std::size_t primes_used = 0;
    std::size_t twin_pairs = 0;
    std::vector<K2Analysis> intervals;
    std::vector<std::string> notes;
};

Fig567Result run_fig567(const ExperimentConfig& config, std::span<const Interval> intervals);

// Dataset writers. Each returns the files it wrote under config.output_dir.
std::vector<std::filesystem::path> write_fig1_fig2(const Fig12Result& r, const ExperimentConfig& config,
                                                   bool fig1 = true, bool fig2 = true);
std::filesystem::path write_fig3(const Fig3Result& r, const ExperimentConfig& config,
                                 std::string_view file_name = "fig3.csv");
std::filesystem::path write_k2_dataset(const K2Analysis& r, const ExperimentConfig& config,
                                       std::string_view file_name);


}  // namespace primeperiod

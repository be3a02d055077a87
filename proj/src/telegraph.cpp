#include "primeperiod/telegraph.hpp"

#include <cmath>
#include <random>
#include <string>

#include "primeperiod/error.hpp"

namespace primeperiod {
namespace {

void check_sign(int s) {
    if (s != 1 && s != -1) throw InvalidArgumentError("initial_sign must be +1 or -1");
}

void record_changes(TelegraphSignal& sig) {
    sig.change_points.clear();
    for (std::size_t i = 1; i < sig.values.size(); ++i)
        if (sig.values[i] != sig.values[i - 1])
            sig.change_points.push_back(sig.start_index + static_cast<std::int64_t>(i));
}

}  // namespace

TelegraphSignal TelegraphSignal::negated() const {
    TelegraphSignal out = *this;
    for (auto& v : out.values) v = static_cast<std::int8_t>(-v);
    return out;
}

void ModelTelegraphParams::validate() const {
    if (!(period > 0)) throw InvalidArgumentError("model telegraph: period must be > 0");
    if (!(persistence_q >= 0 && persistence_q < 1))
        throw InvalidArgumentError("model telegraph: persistence q must be in [0, 1)");
    if (!(grid_step > 0)) throw InvalidArgumentError("model telegraph: grid_step must be > 0");
    if (length < 1) throw InvalidArgumentError("model telegraph: length must be >= 1");
    if (phase && !(*phase >= 0 && *phase <= period))
        throw InvalidArgumentError("model telegraph: phase must lie in [0, period]");
}

TelegraphSignal telegraph_from_changepoints(std::span<const std::int64_t> points,
                                            std::int64_t domain_start,
                                            std::int64_t domain_end,
                                            int initial_sign) {
    check_sign(initial_sign);
    if (domain_start >= domain_end)
        throw InvalidArgumentError("telegraph: domain_start must be < domain_end");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i] <= points[i - 1])
            throw NonMonotoneError("telegraph: change points not strictly increasing at index " +
                                   std::to_string(i));

    TelegraphSignal sig;
    sig.start_index = domain_start;
    sig.values.resize(static_cast<std::size_t>(domain_end - domain_start + 1));

    std::size_t k = 0;
    int sign = initial_sign;
    for (std::int64_t n = domain_start; n <= domain_end; ++n) {
        while (k < points.size() && points[k] <= n) {
            sign = -sign;
            ++k;
        }
        sig.values[static_cast<std::size_t>(n - domain_start)] = static_cast<std::int8_t>(sign);
    }
    record_changes(sig);
    return sig;
}

TelegraphSignal simulate_model_telegraph(const ModelTelegraphParams& params,
                                         double flip_probability,
                                         std::uint64_t seed) {
    params.validate();
    if (!(flip_probability >= 0 && flip_probability <= 1))
        throw InvalidArgumentError("model telegraph: flip_probability must be in [0, 1]");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double phase = params.phase ? *params.phase : params.period * unit(rng);

    // Event n sits at (n * T + phase) / grid_step in grid units. Starting at
    // n = 0 keeps the lattice stationary from the first grid point on.
    const double horizon = static_cast<double>(params.length - 1);
    TelegraphSignal sig;
    sig.values.resize(params.length);
    int sign = 1;
    std::size_t i = 0;
    for (std::uint64_t n = 0;; ++n) {
        const double event = (static_cast<double>(n) * params.period + phase) / params.grid_step;
        if (event > horizon) break;
        for (; static_cast<double>(i) < event; ++i) sig.values[i] = static_cast<std::int8_t>(sign);
        if (unit(rng) < flip_probability) sign = -sign;
    }
    for (; i < params.length; ++i) sig.values[i] = static_cast<std::int8_t>(sign);
    record_changes(sig);
    return sig;
}

TelegraphSignal telegraph_from_crossings(std::span<const double> times,
                                         double horizon_start,
                                         double horizon_end,
                                         double grid_step,
                                         int initial_sign) {
    check_sign(initial_sign);
    if (!(grid_step > 0)) throw InvalidArgumentError("telegraph: grid_step must be > 0");
    if (!(horizon_end > horizon_start))
        throw InvalidArgumentError("telegraph: empty horizon");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && times[i] <= times[i - 1])
            throw NonMonotoneError("telegraph: crossing times not strictly increasing at index " +
                                   std::to_string(i));
        if (times[i] < horizon_start || times[i] > horizon_end)
            throw InvalidArgumentError("telegraph: crossing time outside horizon");
    }

    const auto count =
        static_cast<std::size_t>(std::floor((horizon_end - horizon_start) / grid_step + 1e-9)) + 1;
    TelegraphSignal sig;
    sig.values.resize(count);
    std::size_t k = 0;
    int sign = initial_sign;
    for (std::size_t i = 0; i < count; ++i) {
        const double t = horizon_start + static_cast<double>(i) * grid_step;
        while (k < times.size() && times[k] <= t) {
            sign = -sign;
            ++k;
        }
        sig.values[i] = static_cast<std::int8_t>(sign);
    }
    record_changes(sig);
    return sig;
}

}  // namespace primeperiod

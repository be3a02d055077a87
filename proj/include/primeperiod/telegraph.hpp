#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace primeperiod {

// A +-1 valued function on the integer grid [start_index, end_index()].
struct TelegraphSignal {
    std::int64_t start_index = 0;
    std::vector<std::int8_t> values;
    // Grid coordinates inside the domain whose value differs from the
    // preceding grid point.
    std::vector<std::int64_t> change_points;

    std::size_t size() const noexcept { return values.size(); }
    std::int64_t end_index() const noexcept {
        return start_index + static_cast<std::int64_t>(values.size()) - 1;
    }
    int at(std::int64_t n) const { return values.at(static_cast<std::size_t>(n - start_index)); }

    TelegraphSignal negated() const;
};

// Parameters of the randomly phased telegraph model: sign-change events at
// t_n = n * period + phase with the phase uniform on [0, period).
struct ModelTelegraphParams {
    double period = 10.0;
    double persistence_q = 0.25;
    std::optional<double> phase;  // drawn per realization when empty
    std::size_t length = 400;
    double grid_step = 1.0;

    void validate() const;
};

// v(n) = initial_sign * (-1)^{#{s in points : s <= n}} for n in
// [domain_start, domain_end].
TelegraphSignal telegraph_from_changepoints(std::span<const std::int64_t> points,
                                            std::int64_t domain_start,
                                            std::int64_t domain_end,
                                            int initial_sign = 1);

TelegraphSignal simulate_model_telegraph(const ModelTelegraphParams& params,
                                         double flip_probability,
                                         std::uint64_t seed);

// Samples a signal that flips at each of `times` onto the grid
// horizon_start + i * grid_step. A grid point at or after a crossing sees the
// flipped sign.
TelegraphSignal telegraph_from_crossings(std::span<const double> times,
                                         double horizon_start,
                                         double horizon_end,
                                         double grid_step,
                                         int initial_sign = 1);

}  // namespace primeperiod

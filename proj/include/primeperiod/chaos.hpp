#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace primeperiod {

using State3 = std::array<double, 3>;

struct RosslerParams {
    double a = 0.15;
    double b = 0.20;
    double c = 10.0;
    double threshold_x = 7.0;
};

struct IntegrationSettings {
    State3 initial{1.0, 1.0, 1.0};
    double dt = 0.01;
    double t_end = 5200.0;
    double transient = 200.0;
};

inline constexpr double kDivergenceBound = 1e6;

// Uniformly sampled trajectory starting at t0.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> x, y, z;

    std::size_t size() const noexcept { return x.size(); }
    double time(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt; }
};

State3 rossler_derivative(const State3& s, const RosslerParams& p) noexcept;

// One classical fourth-order Runge-Kutta step for an autonomous system.
template <class State, class Derivative>
State rk4_step(const State& s, double dt, Derivative&& f) {
    const auto axpy = [](const State& base, double h, const State& d) {
        State out = base;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * d[i];
        return out;
    };
    const State k1 = f(s);
    const State k2 = f(axpy(s, dt / 2, k1));
    const State k3 = f(axpy(s, dt / 2, k2));
    const State k4 = f(axpy(s, dt, k3));
    State out = s;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return out;
}

// Fixed-step RK4 from t = 0; samples with t < transient are dropped.
Trajectory integrate(const RosslerParams& params, const IntegrationSettings& settings);

// Linearly interpolated times where x goes from below `threshold` to at or
// above it between consecutive samples.
std::vector<double> upward_crossings(const Trajectory& traj, double threshold);

// Period of the dominant spectral peak of x(t). The trajectory must span at
// least 50 such periods.
double fundamental_period(const Trajectory& traj);

}  // namespace primeperiod

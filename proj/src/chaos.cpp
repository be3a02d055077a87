#include "primeperiod/chaos.hpp"

#include <cmath>
#include <string>

#include "primeperiod/error.hpp"
#include "primeperiod/spectrum.hpp"

namespace primeperiod {

State3 rossler_derivative(const State3& s, const RosslerParams& p) noexcept {
    const auto [x, y, z] = s;
    return {-(y + z), x + p.a * y, p.b + x * z - p.c * z};
}

Trajectory integrate(const RosslerParams& params, const IntegrationSettings& settings) {
    if (!(settings.dt > 0)) throw InvalidArgumentError("integrate: dt must be > 0");
    if (!(settings.transient >= 0)) throw InvalidArgumentError("integrate: transient must be >= 0");
    if (!(settings.t_end > settings.transient))
        throw InvalidArgumentError("integrate: t_end must exceed transient (empty trajectory)");

    const auto steps = static_cast<std::size_t>(std::llround(settings.t_end / settings.dt));
    const auto first_kept =
        static_cast<std::size_t>(std::ceil(settings.transient / settings.dt - 1e-9));

    Trajectory traj;
    traj.dt = settings.dt;
    traj.t0 = static_cast<double>(first_kept) * settings.dt;
    const std::size_t kept = steps >= first_kept ? steps - first_kept + 1 : 0;
    traj.x.reserve(kept);
    traj.y.reserve(kept);
    traj.z.reserve(kept);

    const auto deriv = [&params](const State3& s) { return rossler_derivative(s, params); };
    State3 s = settings.initial;
    for (std::size_t i = 0; i <= steps; ++i) {
        for (double v : s)
            if (!std::isfinite(v) || std::abs(v) > kDivergenceBound)
                throw DivergenceError("integrate: trajectory diverged at t = " +
                                      std::to_string(static_cast<double>(i) * settings.dt));
        if (i >= first_kept) {
            traj.x.push_back(s[0]);
            traj.y.push_back(s[1]);
            traj.z.push_back(s[2]);
        }
        if (i < steps) s = rk4_step(s, settings.dt, deriv);
    }
    if (traj.size() == 0) throw InvalidArgumentError("integrate: empty trajectory");
    return traj;
}

std::vector<double> upward_crossings(const Trajectory& traj, double threshold) {
    if (traj.size() == 0) throw InvalidArgumentError("upward_crossings: empty trajectory");
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const double a = traj.x[i], b = traj.x[i + 1];
        if (a < threshold && b >= threshold) {
            const double frac = (threshold - a) / (b - a);
            out.push_back(traj.time(i) + frac * traj.dt);
        }
    }
    return out;
}

double fundamental_period(const Trajectory& traj) {
    const auto peak = dominant_period(traj.x, traj.dt);
    const double span = traj.dt * static_cast<double>(traj.size() - 1);
    if (span < 50 * peak.period)
        throw InvalidArgumentError("fundamental_period: trajectory spans fewer than 50 cycles");
    return peak.period;
}

}  // namespace primeperiod

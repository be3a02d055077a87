#include "primeperiod/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

#include "primeperiod/error.hpp"

namespace primeperiod {
namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex planner_mutex;

struct FftwDeleter {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

SpectralPeak dominant_period(std::span<const double> series, double sample_spacing,
                             std::size_t padding) {
    const std::size_t n = series.size();
    if (n < 4) throw NoPeakError("dominant_period: series too short");
    if (!(sample_spacing > 0)) throw InvalidArgumentError("dominant_period: spacing must be > 0");

    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);

    const std::size_t m = next_pow2(std::max<std::size_t>(1, padding) * n);
    std::unique_ptr<double, FftwDeleter> in(fftw_alloc_real(m));
    std::unique_ptr<fftw_complex, FftwDeleter> out(fftw_alloc_complex(m / 2 + 1));

    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in.get(), out.get(), FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < m; ++i) in.get()[i] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = 0.5 - 0.5 * std::cos(2 * std::numbers::pi * static_cast<double>(i) /
                                              static_cast<double>(n - 1));
        in.get()[i] = (series[i] - mean) * w;
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan);
    }

    std::vector<double> power(m / 2 + 1);
    for (std::size_t k = 0; k < power.size(); ++k) {
        const double re = out.get()[k][0], im = out.get()[k][1];
        power[k] = re * re + im * im;
    }

    std::size_t best = 1;
    for (std::size_t k = 2; k < power.size(); ++k)
        if (power[k] > power[best]) best = k;
    if (!(power[best] > 1e-24)) throw NoPeakError("dominant_period: flat spectrum");

    double offset = 0.0;
    if (best + 1 < power.size() && power[best - 1] > 0 && power[best + 1] > 0) {
        const double l = std::log(power[best - 1]);
        const double c = std::log(power[best]);
        const double r = std::log(power[best + 1]);
        const double denom = l - 2 * c + r;
        if (denom < 0) offset = std::clamp(0.5 * (l - r) / denom, -0.5, 0.5);
    }
    const double bin = static_cast<double>(best) + offset;
    const double frequency = bin / (static_cast<double>(m) * sample_spacing);
    const double period = 1.0 / frequency;
    if (period > static_cast<double>(n) * sample_spacing)
        throw NoPeakError("dominant_period: strongest component is longer than the series");
    const double df = 1.0 / (static_cast<double>(n) * sample_spacing);
    return {frequency, period, period * period * df};
}

}  // namespace primeperiod

#pragma once

#include <cstddef>
#include <span>

namespace primeperiod {

struct SpectralPeak {
    double frequency;  // cycles per unit of sample spacing
    double period;
    double period_resolution;  // period spread of one unpadded DFT bin
};

// Dominant non-zero frequency of a mean-removed, Hann-windowed series.
// The series is zero-padded to at least `padding` times its length and the
// peak is refined by Gaussian interpolation over the neighbouring bins.
SpectralPeak dominant_period(std::span<const double> series,
                             double sample_spacing,
                             std::size_t padding = 4);

}  // namespace primeperiod

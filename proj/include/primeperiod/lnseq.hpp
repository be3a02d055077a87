#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "primeperiod/primes.hpp"

namespace primeperiod {

inline constexpr double kDefaultScale = 10.0;

struct LnSequence {
    std::vector<std::int64_t> values;
    double scale = kDefaultScale;
    std::size_t source_gap_count = 0;
    std::size_t dropped_below_one = 0;   // rounded entries < 1 (the 2 -> 3 gap)
    std::size_t dropped_duplicates = 0;  // rounding produced a non-increase
};

std::vector<double> log_gaps(const GapSequence& g);

// scale * cumulative sum of ln(gap), before rounding.
std::vector<double> scaled_cumulative_log_gaps(const GapSequence& g, double scale);

LnSequence ln_sequence(const GapSequence& g, double scale = kDefaultScale);

}  // namespace primeperiod

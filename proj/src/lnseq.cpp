#include "primeperiod/lnseq.hpp"

#include <cmath>
#include <string>

#include "primeperiod/error.hpp"

namespace primeperiod {

std::vector<double> log_gaps(const GapSequence& g) {
    std::vector<double> out;
    out.reserve(g.gaps.size());
    for (std::uint64_t gap : g.gaps) {
        if (gap < 1) throw DomainError("log_gaps: nonpositive gap");
        out.push_back(std::log(static_cast<double>(gap)));
    }
    return out;
}

std::vector<double> scaled_cumulative_log_gaps(const GapSequence& g, double scale) {
    if (!(scale > 0) || !std::isfinite(scale))
        throw InvalidArgumentError("ln_sequence: scale must be positive");
    auto out = log_gaps(g);
    double sum = 0.0;
    for (double& v : out) {
        sum += v;
        v = scale * sum;
    }
    return out;
}

LnSequence ln_sequence(const GapSequence& g, double scale) {
    const auto scaled = scaled_cumulative_log_gaps(g, scale);
    LnSequence seq;
    seq.scale = scale;
    seq.source_gap_count = g.gaps.size();
    seq.values.reserve(scaled.size());
    for (double v : scaled) {
        const std::int64_t r = std::llround(v);
        if (r < 1) {
            ++seq.dropped_below_one;
        } else if (!seq.values.empty() && r <= seq.values.back()) {
            ++seq.dropped_duplicates;
        } else {
            seq.values.push_back(r);
        }
    }
    return seq;
}

}  // namespace primeperiod

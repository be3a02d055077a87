#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace primeperiod {

enum class SequenceOrigin { full, k2_filtered };

// Strictly increasing positive integers, either all primes up to some point
// (origin full) or a filtered subsequence of them.
struct PrimeSequence {
    std::vector<std::uint64_t> values;
    SequenceOrigin origin = SequenceOrigin::full;

    std::size_t size() const noexcept { return values.size(); }
};

struct GapSequence {
    std::vector<std::uint64_t> gaps;
    std::size_t source_count = 0;
};

struct GapHistogram {
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t mode = 0;  // smallest gap among those with maximal count
};

struct GapGrowthRow {
    std::uint64_t center_prime;
    double mean_gap;
    double log_center;
};

using TwinPair = std::pair<std::uint64_t, std::uint64_t>;

inline constexpr std::size_t kDefaultMaxPrimeCount = 10'000'000;
inline constexpr std::uint64_t kMaxSieveLimit = 4'000'000'000ULL;

// Deterministic trial-division check; used to validate sequences, not to
// generate them.
bool is_prime(std::uint64_t n) noexcept;

PrimeSequence first_n_primes(std::size_t count,
                             std::size_t max_count = kDefaultMaxPrimeCount);
PrimeSequence primes_up_to(std::uint64_t limit);

GapSequence gaps(const PrimeSequence& seq);

// Pairs (p, p + 2) with both members in `seq`. Overlapping chains such as
// 3, 5, 7 produce one pair per adjacent couple.
std::vector<TwinPair> twin_pairs(const PrimeSequence& seq);

// Removes the larger member of every twin pair found in `seq`.
PrimeSequence kill_twins(const PrimeSequence& seq);

GapHistogram gap_histogram(const GapSequence& g);

// Sliding mean gap over `window` consecutive primes, paired with ln of the
// window's central prime.
std::vector<GapGrowthRow> gap_growth_diagnostic(const PrimeSequence& seq,
                                                std::size_t window);

// Throws if `seq` violates the PrimeSequence invariants.
void validate(const PrimeSequence& seq);

}  // namespace primeperiod

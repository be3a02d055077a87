#include "primeperiod/primes.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "primeperiod/error.hpp"

namespace primeperiod {
namespace {

constexpr std::uint64_t kSegmentSize = 1 << 18;

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::vector<std::uint64_t> small_sieve(std::uint64_t limit) {
    std::vector<char> mark(limit + 1, 1);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (!mark[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) mark[j] = 0;
    }
    return out;
}

// Segmented sieve of Eratosthenes over [2, limit].
std::vector<std::uint64_t> sieve(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit < 2) return out;
    const auto base = small_sieve(isqrt(limit));
    out.reserve(static_cast<std::size_t>(1.1 * limit / std::log(static_cast<double>(limit) + 1)) + 16);

    std::vector<char> segment;
    for (std::uint64_t low = 2; low <= limit; low += kSegmentSize) {
        const std::uint64_t high = std::min(limit, low + kSegmentSize - 1);
        segment.assign(high - low + 1, 1);
        for (std::uint64_t p : base) {
            if (p * p > high) break;
            std::uint64_t start = std::max(p * p, (low + p - 1) / p * p);
            for (std::uint64_t j = start; j <= high; j += p) segment[j - low] = 0;
        }
        for (std::uint64_t i = 0; i < segment.size(); ++i)
            if (segment[i]) out.push_back(low + i);
    }
    return out;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeSequence primes_up_to(std::uint64_t limit) {
    if (limit < 2) throw InvalidArgumentError("primes_up_to: limit must be >= 2");
    if (limit > kMaxSieveLimit)
        throw ResourceLimitError("primes_up_to: limit " + std::to_string(limit) +
                                 " exceeds " + std::to_string(kMaxSieveLimit));
    return {sieve(limit), SequenceOrigin::full};
}

PrimeSequence first_n_primes(std::size_t count, std::size_t max_count) {
    if (count < 1) throw InvalidArgumentError("first_n_primes: count must be >= 1");
    if (count > max_count)
        throw ResourceLimitError("first_n_primes: count " + std::to_string(count) +
                                 " exceeds maximum " + std::to_string(max_count));

    // p_n < n (ln n + ln ln n) for n >= 6.
    std::uint64_t bound = 15;
    if (count >= 6) {
        const double n = static_cast<double>(count);
        bound = static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n)))) + 1;
    }
    for (;;) {
        auto primes = sieve(std::min(bound, kMaxSieveLimit));
        if (primes.size() >= count) {
            primes.resize(count);
            return {std::move(primes), SequenceOrigin::full};
        }
        if (bound >= kMaxSieveLimit)
            throw ResourceLimitError("first_n_primes: sieve limit exhausted");
        bound *= 2;
    }
}

GapSequence gaps(const PrimeSequence& seq) {
    if (seq.size() < 2)
        throw TooShortInputError("gaps: need at least 2 elements, got " +
                                 std::to_string(seq.size()));
    GapSequence g;
    g.source_count = seq.size();
    g.gaps.reserve(seq.size() - 1);
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        g.gaps.push_back(seq.values[i + 1] - seq.values[i]);
    return g;
}

std::vector<TwinPair> twin_pairs(const PrimeSequence& seq) {
    std::vector<TwinPair> out;
    const auto& v = seq.values;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i + 1] - v[i] == 2) out.emplace_back(v[i], v[i + 1]);
    return out;
}

PrimeSequence kill_twins(const PrimeSequence& seq) {
    std::unordered_set<std::uint64_t> killed;
    for (const auto& [p, q] : twin_pairs(seq)) killed.insert(q);

    PrimeSequence out;
    out.origin = SequenceOrigin::k2_filtered;
    out.values.reserve(seq.size() - killed.size());
    for (std::uint64_t p : seq.values)
        if (!killed.contains(p)) out.values.push_back(p);
    return out;
}

GapHistogram gap_histogram(const GapSequence& g) {
    if (g.gaps.empty()) throw TooShortInputError("gap_histogram: empty gap sequence");
    GapHistogram h;
    for (std::uint64_t gap : g.gaps) ++h.counts[gap];
    std::uint64_t best = 0;
    // Ascending key order makes the smallest gap win ties.
    for (const auto& [gap, count] : h.counts) {
        if (count > best) {
            best = count;
            h.mode = gap;
        }
    }
    return h;
}

std::vector<GapGrowthRow> gap_growth_diagnostic(const PrimeSequence& seq, std::size_t window) {
    if (window < 2) throw InvalidArgumentError("gap_growth_diagnostic: window must be >= 2");
    if (window > seq.size())
        throw InvalidArgumentError("gap_growth_diagnostic: window " + std::to_string(window) +
                                   " larger than sequence length " +
                                   std::to_string(seq.size()));
    const auto& v = seq.values;
    std::vector<GapGrowthRow> rows;
    rows.reserve(v.size() - window + 1);
    for (std::size_t i = 0; i + window <= v.size(); ++i) {
        const std::uint64_t center = v[i + (window - 1) / 2];
        rows.push_back({center,
                        static_cast<double>(v[i + window - 1] - v[i]) /
                            static_cast<double>(window - 1),
                        std::log(static_cast<double>(center))});
    }
    return rows;
}

void validate(const PrimeSequence& seq) {
    const auto& v = seq.values;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 2) throw DomainError("prime sequence element < 2");
        if (i > 0 && v[i] <= v[i - 1])
            throw NonMonotoneError("prime sequence not strictly increasing at index " +
                                   std::to_string(i));
        if (seq.origin == SequenceOrigin::full && !is_prime(v[i]))
            throw DomainError(std::to_string(v[i]) + " is not prime");
    }
}

}  // namespace primeperiod

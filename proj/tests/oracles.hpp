#pragma once

// Test-only reference implementations. Deliberately naive and independent
// of the library code paths they check.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

inline bool trial_division_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> primes_by_trial_division(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= limit; ++n)
        if (trial_division_is_prime(n)) out.push_back(n);
    return out;
}

inline std::uint64_t nth_prime_by_trial_division(std::size_t n) {
    std::size_t seen = 0;
    for (std::uint64_t k = 2;; ++k)
        if (trial_division_is_prime(k) && ++seen == n) return k;
}

// Double loop over all pairs of primes.
inline std::size_t twin_count_double_loop(const std::vector<std::uint64_t>& primes) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
        for (std::size_t j = i + 1; j < primes.size() && primes[j] <= primes[i] + 2; ++j)
            if (primes[j] - primes[i] == 2) ++count;
    return count;
}

// Direct evaluation of <ab> - <a><b> over the two lag-shifted subwindows of
// `v`, divided by the subwindow standard deviations; 0 when either
// subwindow is constant.
inline std::vector<double> naive_acf(const std::vector<int>& v, std::size_t max_lag) {
    std::vector<double> out;
    const std::size_t w = v.size();
    for (std::size_t tau = 0; tau <= max_lag; ++tau) {
        const std::size_t n = w - tau;
        double ma = 0, mb = 0, mab = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ma += v[i];
            mb += v[i + tau];
            mab += v[i] * v[i + tau];
        }
        ma /= n;
        mb /= n;
        mab /= n;
        double va = 0, vb = 0;
        for (std::size_t i = 0; i < n; ++i) {
            va += (v[i] - ma) * (v[i] - ma);
            vb += (v[i + tau] - mb) * (v[i + tau] - mb);
        }
        va /= n;
        vb /= n;
        const double cov = mab - ma * mb;
        out.push_back(va > 1e-15 && vb > 1e-15 ? cov / std::sqrt(va * vb) : 0.0);
    }
    return out;
}

}  // namespace oracle

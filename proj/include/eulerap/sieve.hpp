#pragma once

/**
 * @file sieve.hpp
 * @brief Segmented sieve of Eratosthenes.
 *
 * Base primes up to sqrt(limit) come from a plain sieve; the range
 * [2, limit] is then crossed off in fixed windows of 2^20 odd numbers, so
 * memory stays at one window plus the output list even for limit = 10^8.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "eulerap/error.hpp"

namespace eulerap {

/// All primes up to and including `limit`, ascending.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint32_t> primes;

    std::size_t size() const noexcept { return primes.size(); }
    std::span<const std::uint32_t> view() const noexcept { return primes; }

    /// Primes p with lo <= p <= hi (clamped to the table).
    std::span<const std::uint32_t> range(std::uint64_t lo, std::uint64_t hi) const {
        auto first = std::lower_bound(primes.begin(), primes.end(), lo);
        auto last = std::upper_bound(first, primes.end(), hi);
        return {first, last};
    }

    /// Primes p with p < bound.
    std::span<const std::uint32_t> below(std::uint64_t bound) const {
        if (bound == 0) return {};
        return range(0, bound - 1);
    }
};

inline constexpr std::size_t kSieveSegment = std::size_t{1} << 20;

namespace detail {

inline std::vector<std::uint32_t> small_primes(std::uint32_t n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

}  // namespace detail

inline PrimeTable sieve(std::uint64_t limit) {
    detail::require(limit >= 2, errc::invalid_argument, "sieve limit must be at least 2");
    detail::require(limit <= 0xFFFFFFFFull, errc::invalid_argument, "sieve limit exceeds 2^32-1");

    PrimeTable table;
    table.limit = limit;
    table.primes.reserve(static_cast<std::size_t>(1.1 * limit / std::log(double(limit))) + 16);
    table.primes.push_back(2);

    auto root = static_cast<std::uint32_t>(std::sqrt(double(limit)));
    while (std::uint64_t{root + 1} * (root + 1) <= limit) ++root;
    const auto base = detail::small_primes(root);

    // Window covers the odd numbers lo, lo+2, ..., lo + 2*(kSieveSegment-1).
    std::vector<char> window(kSieveSegment);
    for (std::uint64_t lo = 3; lo <= limit; lo += 2 * kSieveSegment) {
        const std::uint64_t hi = std::min<std::uint64_t>(limit, lo + 2 * (kSieveSegment - 1));
        const std::size_t count = static_cast<std::size_t>((hi - lo) / 2 + 1);
        std::fill_n(window.begin(), count, 1);
        for (std::size_t bi = 1; bi < base.size(); ++bi) {
            const std::uint64_t p = base[bi];
            if (p * p > hi) break;
            std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
            if (start % 2 == 0) start += p;
            for (std::uint64_t m = start; m <= hi; m += 2 * p) window[(m - lo) / 2] = 0;
        }
        for (std::size_t i = 0; i < count; ++i)
            if (window[i]) table.primes.push_back(static_cast<std::uint32_t>(lo + 2 * i));
    }
    return table;
}

}  // namespace eulerap

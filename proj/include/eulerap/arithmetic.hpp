#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "eulerap/error.hpp"

namespace eulerap {

/// q together with its prime factorization, primes ascending.
struct FactoredModulus {
    std::uint64_t q = 1;
    std::vector<std::pair<std::uint64_t, int>> factors;
};

inline FactoredModulus factorize(std::uint64_t n) {
    detail::require(n >= 1, errc::invalid_argument, "factorize requires n >= 1");
    FactoredModulus out{n, {}};
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.factors.emplace_back(p, e);
    }
    if (n > 1) out.factors.emplace_back(n, 1);
    return out;
}

inline int mobius(std::uint64_t n) {
    detail::require(n >= 1, errc::invalid_argument, "mobius requires n >= 1");
    int sign = 1;
    for (auto [p, e] : factorize(n).factors) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    detail::require(n >= 1, errc::invalid_argument, "euler_phi requires n >= 1");
    std::uint64_t phi = n;
    for (auto [p, e] : factorize(n).factors) phi = phi / p * (p - 1);
    return phi;
}

/// Number of distinct prime factors.
inline int omega(std::uint64_t n) {
    return static_cast<int>(factorize(n).factors.size());
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    detail::require(n >= 1, errc::invalid_argument, "divisors requires n >= 1");
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Smallest primitive root modulo the odd prime power p^e.
inline std::uint64_t primitive_root(std::uint64_t p, int e) {
    detail::require(p > 2, errc::invalid_argument, "primitive_root needs an odd prime");
    const auto group = factorize(p - 1).factors;
    std::uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto [r, _] : group)
            if (powmod(g, (p - 1) / r, p) == 1) {
                ok = false;
                break;
            }
        if (ok) break;
    }
    // A root mod p lifts to every p^e unless g^(p-1) = 1 mod p^2.
    if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
    return g;
}

}  // namespace eulerap

#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force Euler products over sieved primes.
 *
 * The oracle sums the principal log of every local factor 1 - term(p) for
 * p = a (q), P <= p <= prime_limit, and bounds the omitted primes by
 *
 *     1.5 * C * int_{prime_limit}^inf t^{-sigma_min} dt,
 *
 * where |term(p)| <= C p^{-sigma_min} beyond the limit and
 * |log(1 - z)| <= 1.5 |z| for |z| <= 1/2.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "eulerap/engine.hpp"
#include "eulerap/error.hpp"
#include "eulerap/lseries.hpp"
#include "eulerap/parallel.hpp"
#include "eulerap/sieve.hpp"

namespace eulerap {

using ProductSpec = std::variant<APProductSpec, RationalProductSpec, MultiTermSpec>;

struct OracleSpec {
    ProductSpec product;
    std::uint64_t prime_limit = 10'000'000;
};

struct OracleResult {
    ComplexVal log_value{0.0, 0.0};
    double tail_bound = 0.0;
};

namespace detail {

struct LocalTerm {
    std::function<ComplexVal(double)> term;  // term(p), the factor being 1 - term(p)
    double C = 0.0;                          // |term(p)| <= C p^{-sigma_min} past the limit
    double sigma_min = 0.0;
    std::uint64_t q = 1, a = 1, P = 2;
};

inline LocalTerm local_term(const APProductSpec& s) {
    return {[z = s.s](double p) { return neg_pow(p, z); }, 1.0, s.s.real(), s.q, s.a, s.P};
}

inline LocalTerm local_term(const RationalProductSpec& s, std::uint64_t limit) {
    std::size_t low = 0;
    while (low <= s.F.degree() && s.F[low] == ComplexVal(0.0)) ++low;
    double fsum = 0.0, gsum = 0.0;
    for (auto c : s.F.coeffs) fsum += std::abs(c);
    for (std::size_t j = 1; j <= s.G.degree(); ++j) gsum += std::abs(s.G[j]);
    // |G(z)| >= 1 - |z| gsum for |z| <= 1
    const double g_low = 1.0 - gsum / double(std::max<std::uint64_t>(limit, 1));
    require(g_low > 0.0, errc::invalid_spec, "G may vanish beyond the prime limit");
    auto term = [F = s.F, G = s.G](double p) {
        const ComplexVal z(1.0 / p, 0.0);
        return F(z) / G(z);
    };
    return {term, fsum / g_low, double(low), s.q, s.a, s.P};
}

inline LocalTerm local_term(const MultiTermSpec& s) {
    double C = 0.0, rho = INFINITY;
    for (const auto& t : s.terms) {
        C += std::abs(t.coeff);
        rho = std::min(rho, t.u * s.s.real() + t.v);
    }
    auto term = [terms = s.terms, z = s.s](double p) {
        ComplexVal acc = 0.0;
        for (const auto& t : terms) acc += t.coeff * neg_pow(p, t.u * z + t.v);
        return acc;
    };
    return {term, C, rho, s.q, s.a, s.P};
}

inline LocalTerm local_term(const ProductSpec& spec, std::uint64_t limit) {
    return std::visit(
        [&](const auto& s) -> LocalTerm {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, RationalProductSpec>)
                return local_term(s, limit);
            else
                return local_term(s);
        },
        spec);
}

inline std::span<const std::uint32_t> oracle_range(const LocalTerm& t, std::uint64_t limit, const PrimeTable& primes) {
    require(t.q >= 1 && std::gcd(t.a, t.q) == 1, errc::invalid_spec, "oracle needs gcd(a, q) = 1");
    require(limit <= primes.limit, errc::invalid_spec, "oracle prime_limit exceeds the prime table");
    if (t.P > limit) return {};
    return primes.range(t.P, limit);
}

inline constexpr std::size_t kOracleBlock = 1 << 15;

}  // namespace detail

inline OracleResult oracle_log_product(const OracleSpec& spec, const PrimeTable& primes, unsigned threads = 1) {
    const auto t = detail::local_term(spec.product, spec.prime_limit);
    const auto range = detail::oracle_range(t, spec.prime_limit, primes);

    const std::size_t blocks = (range.size() + detail::kOracleBlock - 1) / detail::kOracleBlock;
    std::vector<ComplexVal> partial(blocks, 0.0);
    std::vector<char> bad(blocks, 0);
    detail::parallel_for(blocks, threads, [&](std::size_t b) {
        const std::size_t lo = b * detail::kOracleBlock;
        const std::size_t hi = std::min(range.size(), lo + detail::kOracleBlock);
        ComplexVal acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const std::uint64_t p = range[i];
            if (p % t.q != t.a % t.q) continue;
            const ComplexVal z = t.term(double(p));
            if (!(std::abs(z) < 1.0)) {
                bad[b] = 1;
                return;
            }
            acc += log1m(z);
        }
        partial[b] = acc;
    });
    OracleResult out;
    for (std::size_t b = 0; b < blocks; ++b) {
        detail::require(!bad[b], errc::invalid_spec, "oracle local term has modulus >= 1");
        out.log_value += partial[b];
    }

    detail::require(t.sigma_min > 1.0, errc::invalid_spec, "oracle tail diverges (smallest exponent <= 1)");
    const double start = double(std::max<std::uint64_t>(spec.prime_limit, t.P - 1));
    detail::require(t.C * std::pow(start, -t.sigma_min) <= 0.5, errc::invalid_spec,
                    "oracle tail terms exceed 1/2 beyond the prime limit");
    out.tail_bound = 1.5 * t.C * std::pow(start, 1.0 - t.sigma_min) / (t.sigma_min - 1.0);
    return out;
}

/// prod (1 - term(p)) multiplied out directly; a second route for checking the log sum.
inline ComplexVal oracle_direct_product(const OracleSpec& spec, const PrimeTable& primes) {
    const auto t = detail::local_term(spec.product, spec.prime_limit);
    ComplexVal prod = 1.0;
    for (std::uint64_t p : detail::oracle_range(t, spec.prime_limit, primes)) {
        if (p % t.q != t.a % t.q) continue;
        prod *= 1.0 - t.term(double(p));
    }
    return prod;
}

}  // namespace eulerap

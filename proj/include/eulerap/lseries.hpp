#pragma once

/**
 * @file lseries.hpp
 * @brief Hurwitz zeta, Dirichlet L-values and logarithms of truncated L-functions.
 *
 * Everything here works for Re s > 1 only. Each value carries an absolute
 * bound on its mathematical truncation error; floating-point rounding is
 * not part of that bound.
 *
 * The workhorse is an Euler-Maclaurin evaluation of
 *
 *     sum_{n >= 0} (r + q n)^{-s}  =  q^{-s} zeta(s, r/q),
 *
 * kept in this scaled form so that Dirichlet L-values at large Re s do
 * not lose their absolute accuracy to a huge q^{s} factor.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "eulerap/bernoulli.hpp"
#include "eulerap/characters.hpp"
#include "eulerap/error.hpp"
#include "eulerap/sieve.hpp"

namespace eulerap {

using ComplexVal = std::complex<double>;

/// A value and a rigorous radius on its truncation error.
struct ValueWithBound {
    ComplexVal value{0.0, 0.0};
    double bound = 0.0;

    ValueWithBound& operator+=(const ValueWithBound& o) {
        value += o.value;
        bound += o.bound;
        return *this;
    }
    friend ValueWithBound operator+(ValueWithBound a, const ValueWithBound& b) { return a += b; }
    friend ValueWithBound operator-(ValueWithBound a, const ValueWithBound& b) {
        a.value -= b.value;
        a.bound += b.bound;
        return a;
    }
    friend ValueWithBound operator*(ComplexVal c, ValueWithBound a) {
        a.value *= c;
        a.bound *= std::abs(c);
        return a;
    }
};

/// Radius of exp(x + e) around exp(x) for |e| <= b.
inline double exp_radius(ComplexVal x, double b) { return std::abs(std::exp(x)) * std::expm1(b); }

struct EvalParams {
    double target_eps = 1e-14;
    std::int64_t em_terms = 16;
    int em_order = 4;
    std::int64_t max_terms = std::int64_t{1} << 22;
    int max_order = 60;
};

inline ComplexVal neg_pow(double base, ComplexVal s) { return std::exp(-s * std::log(base)); }

/// log(1 - z) for |z| < 1, accurate when z is tiny.
inline ComplexVal log1m(ComplexVal z) {
    const double a = std::abs(z);
    if (a < 1e-3) {
        ComplexVal term = z, sum = 0.0;
        for (int k = 1; k < 12; ++k) {
            sum += term / double(k);
            term *= z;
        }
        return -sum;
    }
    return std::log(1.0 - z);
}

/// sum_{n >= P} n^{-sigma} <= P^{-sigma} + P^{1-sigma}/(sigma-1).
inline double tail_majorant(double P, double sigma) {
    return std::pow(P, -sigma) + std::pow(P, 1.0 - sigma) / (sigma - 1.0);
}

namespace detail {

/// B_{2k}/(2k)! for k = 0..kmax as doubles.
inline const std::vector<double>& bernoulli_over_factorial() {
    static const std::vector<double> table = [] {
        constexpr std::size_t kmax = 64;
        const auto cache = bernoulli(2 * kmax);
        std::vector<double> out(kmax + 1);
        BigInt fact = 1;
        for (std::size_t k = 0; k <= kmax; ++k) {
            if (k > 0) fact *= BigInt((2 * k - 1) * (2 * k));
            out[k] = static_cast<double>(cache[2 * k] / BigRational(fact));
        }
        return out;
    }();
    return table;
}

/// Remainder majorant after N explicit terms and M Bernoulli corrections.
inline double em_bound(ComplexVal s, double r, double q, std::int64_t N, int M) {
    const auto& bf = bernoulli_over_factorial();
    const double sigma = s.real();
    const double base = r + q * double(N);
    double log_mag = std::log(std::abs(bf[static_cast<std::size_t>(M + 1)]));
    for (int j = 0; j <= 2 * M; ++j) log_mag += std::log(std::abs(s + double(j)));
    log_mag += (2 * M + 1) * std::log(q) - (sigma + 2 * M + 1) * std::log(base);
    return std::abs(s + double(2 * M + 1)) / (sigma + 2 * M + 1) * std::exp(log_mag);
}

inline ValueWithBound em_sum(ComplexVal s, double r, double q, std::int64_t N, int M) {
    const auto& bf = bernoulli_over_factorial();
    ComplexVal partial = 0.0;
    for (std::int64_t n = N - 1; n >= 0; --n) partial += neg_pow(r + q * double(n), s);

    const double base = r + q * double(N);
    const ComplexVal t = neg_pow(base, s);
    ComplexVal tail = t * base / (q * (s - 1.0)) + 0.5 * t;
    const double z = q / base;
    ComplexVal poch = s * z;
    ComplexVal corr = 0.0;
    for (int k = 1; k <= M; ++k) {
        corr += bf[static_cast<std::size_t>(k)] * poch * t;
        poch *= (s + double(2 * k - 1)) * (s + double(2 * k)) * z * z;
    }
    return {partial + tail + corr, em_bound(s, r, q, N, M)};
}

/// sum_{n>=0} (r + q n)^{-s} with bound <= eps, growing N and M as needed.
inline ValueWithBound progression_zeta(ComplexVal s, double r, double q, double eps, const EvalParams& params) {
    require(s.real() > 1.0, errc::out_of_domain, "zeta evaluation requires Re s > 1");
    const double imag_scale = std::abs(s.imag()) / (2.0 * 3.141592653589793);
    std::int64_t N = std::max<std::int64_t>(params.em_terms, static_cast<std::int64_t>(imag_scale / q) + 1);
    const int max_order = std::min<int>(params.max_order, 62);
    for (; N <= params.max_terms; N *= 2) {
        double prev = std::numeric_limits<double>::infinity();
        for (int M = std::max(1, params.em_order); M <= max_order; ++M) {
            const double b = em_bound(s, r, q, N, M);
            if (b <= eps) return em_sum(s, r, q, N, M);
            if (b > prev) break;  // past the optimal order for this N
            prev = b;
        }
    }
    throw error(errc::precision_unreachable,
                "Euler-Maclaurin could not reach eps=" + std::to_string(eps) + " within the term ceiling");
}

}  // namespace detail

/// zeta(s, x) with explicit truncation parameters (no auto-growth).
inline ValueWithBound hurwitz_zeta_fixed(ComplexVal s, double x, std::int64_t N, int M) {
    detail::require(s.real() > 1.0, errc::out_of_domain, "hurwitz_zeta requires Re s > 1");
    detail::require(x > 0.0 && x <= 1.0, errc::invalid_argument, "hurwitz_zeta requires 0 < x <= 1");
    detail::require(N >= 1 && M >= 1 && M <= 62, errc::invalid_argument, "hurwitz_zeta: bad N or M");
    return detail::em_sum(s, x, 1.0, N, M);
}

inline ValueWithBound hurwitz_zeta(ComplexVal s, double x, const EvalParams& params = {}) {
    detail::require(s.real() > 1.0, errc::out_of_domain, "hurwitz_zeta requires Re s > 1");
    detail::require(x > 0.0 && x <= 1.0, errc::invalid_argument, "hurwitz_zeta requires 0 < x <= 1");
    return detail::progression_zeta(s, x, 1.0, params.target_eps, params);
}

inline ValueWithBound riemann_zeta(ComplexVal s, const EvalParams& params = {}) {
    return hurwitz_zeta(s, 1.0, params);
}

/// L(s, chi) = sum_r chi(r) sum_n (r + q n)^{-s}.
inline ValueWithBound dirichlet_l(ComplexVal s, const DirichletCharacter& chi, const EvalParams& params = {}) {
    detail::require(s.real() > 1.0, errc::out_of_domain, "dirichlet_l requires Re s > 1");
    const std::uint64_t q = chi.modulus();
    std::uint64_t active = 0;
    for (std::uint64_t r = 1; r <= q; ++r) active += chi.is_zero(r) ? 0 : 1;
    const double eps = params.target_eps / double(std::max<std::uint64_t>(active, 1));
    ValueWithBound out;
    for (std::uint64_t r = 1; r <= q; ++r) {
        if (chi.is_zero(r)) continue;
        out += chi.value(r) * detail::progression_zeta(s, double(r), double(q), eps, params);
    }
    return out;
}

/// zeta(s) with the Euler factors of the primes below P removed.
inline ValueWithBound zeta_p(ComplexVal s, std::uint64_t P, const PrimeTable& primes, const EvalParams& params = {}) {
    detail::require(s.real() > 1.0, errc::out_of_domain, "zeta_p requires Re s > 1");
    detail::require(P >= 2, errc::invalid_argument, "zeta_p requires P >= 2");
    detail::require(P - 1 <= primes.limit, errc::invalid_argument, "prime table too small for zeta_p");
    ValueWithBound z = riemann_zeta(s, params);
    ComplexVal factor = 1.0;
    for (auto p : primes.below(P)) factor *= 1.0 - neg_pow(double(p), s);
    return factor * z;
}

namespace detail {

/// Smallest P0 >= P for which |log L_{P0}(s, chi)| < 1 is certain.
inline std::uint64_t branch_safe_cutoff(double sigma, std::uint64_t P, const PrimeTable& primes,
                                        const EvalParams& params) {
    const double closed = std::pow(1.0 / (sigma - 1.0), 1.0 / (sigma - 1.0));
    if (closed < double(primes.limit)) {
        auto P0 = static_cast<std::uint64_t>(closed) + 1;
        return std::max(P, P0);
    }
    // Closed form out of reach: certify log zeta_{P0}(sigma) < 1 numerically.
    const ValueWithBound z = riemann_zeta(ComplexVal(sigma, 0.0), params);
    double log_zp = std::log(z.value.real());
    const double slack = z.bound / (z.value.real() - z.bound);
    for (auto p : primes.view()) {
        if (p >= P && log_zp + slack < 1.0) return p;
        log_zp += std::log1p(-std::pow(double(p), -sigma));
    }
    throw error(errc::precision_unreachable, "prime table too small to pin the logarithm branch");
}

}  // namespace detail

/**
 * log L_P(s, chi) in the Dirichlet-series sense, i.e.
 * sum_{p >= P} sum_{k >= 1} chi(p)^k / (k p^{ks}).
 *
 * The principal log of L(s,chi) prod_{p<P0}(1 - chi(p)p^{-s}) agrees with
 * the series once |log L_{P0}| < 1 < pi, so P0 is pushed high enough for
 * that and the factors P <= p < P0 are added back one at a time.
 */
inline ValueWithBound log_truncated_l(ComplexVal s, const DirichletCharacter& chi, std::uint64_t P,
                                      const PrimeTable& primes, const EvalParams& params = {}) {
    const double sigma = s.real();
    detail::require(sigma > 1.0, errc::out_of_domain, "log_truncated_l requires Re s > 1");
    detail::require(P >= 2, errc::invalid_argument, "log_truncated_l requires P >= 2");

    const double majorant = tail_majorant(double(P), sigma);
    if (majorant <= 1e-3 * params.target_eps || P - 1 > primes.limit) return {0.0, majorant};

    const std::uint64_t P0 = detail::branch_safe_cutoff(sigma, P, primes, params);
    detail::require(P0 - 1 <= primes.limit, errc::precision_unreachable, "prime table too small for cutoff");

    const ValueWithBound l = dirichlet_l(s, chi, params);
    ComplexVal removed = 1.0;
    for (auto p : primes.below(P0))
        if (!chi.is_zero(p)) removed *= 1.0 - chi.value(p) * neg_pow(double(p), s);

    const ComplexVal x = l.value * removed;
    const double radius = l.bound * std::abs(removed);
    detail::require(radius < 0.5 * std::abs(x), errc::precision_unreachable, "L-value too imprecise to take its log");

    ValueWithBound out{std::log(x), -std::log1p(-radius / std::abs(x))};
    for (auto p : primes.range(P, P0 - 1))
        if (!chi.is_zero(p)) out.value -= log1m(chi.value(p) * neg_pow(double(p), s));
    return out;
}

}  // namespace eulerap

#pragma once

/**
 * @file witt.hpp
 * @brief Power sums, Witt exponents and necklace counts.
 *
 * For H(t) = 1 + a_1 t + ... + a_d t^d = prod_i (1 - alpha_i t):
 *   - power_sums gives s_H(k) = sum_i alpha_i^k via Newton-Girard,
 *   - witt_b gives the exponents in H(t) = prod_j (1 - t^j)^{b_H(j)},
 *   - necklace_m gives the exponents M(m) in the multivariate identity
 *     1 - z_1 - ... - z_k = prod_m (1 - z^m)^{M(m)}.
 *
 * The polynomial routines are templates over the coefficient ring so the
 * same code runs on std::complex<double> and, exactly, on BigInt.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "eulerap/arithmetic.hpp"
#include "eulerap/bernoulli.hpp"
#include "eulerap/error.hpp"

namespace eulerap {

/// Ascending coefficients; trailing zeros are trimmed on construction.
template <class T>
struct Polynomial {
    std::vector<T> coeffs;

    Polynomial() = default;
    Polynomial(std::vector<T> c) : coeffs(std::move(c)) {  // NOLINT(implicit)
        while (!coeffs.empty() && coeffs.back() == T(0)) coeffs.pop_back();
    }
    Polynomial(std::initializer_list<T> c) : Polynomial(std::vector<T>(c)) {}

    /// Degree; the zero polynomial reports 0.
    std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    bool is_zero() const noexcept { return coeffs.empty(); }
    T operator[](std::size_t i) const { return i < coeffs.size() ? coeffs[i] : T(0); }

    template <class X>
    X operator()(X x) const {
        X acc(0);
        for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + X(coeffs[i]);
        return acc;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<T> out(std::max(a.coeffs.size(), b.coeffs.size()), T(0));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] - b[i];
        return Polynomial(std::move(out));
    }
};

using CPolynomial = Polynomial<std::complex<double>>;

template <class T>
struct PowerSums {
    std::vector<T> values;  // values[k-1] = s_H(k)
    const T& operator()(std::size_t k) const { return values.at(k - 1); }
};

template <class T>
struct WittCoeffs {
    std::vector<T> values;  // values[k-1] = b_H(k)
    const T& operator()(std::size_t k) const { return values.at(k - 1); }
};

namespace detail {

inline double magnitude(const std::complex<double>& x) { return std::abs(x); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const BigInt& x) { return static_cast<double>(boost::multiprecision::abs(x)); }
inline double magnitude(const BigRational& x) { return static_cast<double>(boost::multiprecision::abs(x)); }

template <class T>
T divide_by(const T& x, std::uint64_t k) {
    if constexpr (std::is_same_v<T, BigInt>) {
        require(x % k == 0, errc::internal_error, "non-integral Witt coefficient");
        return x / k;
    } else {
        return x / static_cast<double>(k);
    }
}

template <class T>
T power(T base, std::uint64_t e) {
    T r(1);
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

template <class T>
void require_unit_constant(const Polynomial<T>& H, const char* what) {
    require(!H.is_zero() && H[0] == T(1), errc::invalid_argument, std::string(what) + " requires H(0) = 1");
}

}  // namespace detail

// s(k) + a_1 s(k-1) + ... + a_{k-1} s(1) + k a_k = 0
template <class T>
PowerSums<T> power_sums(const Polynomial<T>& H, std::size_t K) {
    detail::require_unit_constant(H, "power_sums");
    detail::require(K >= 1, errc::invalid_argument, "power_sums requires K >= 1");
    PowerSums<T> out;
    out.values.reserve(K);
    for (std::size_t k = 1; k <= K; ++k) {
        T acc = H[k] * T(static_cast<long>(k));
        for (std::size_t j = 1; j < k && j <= H.degree(); ++j) acc += H[j] * out.values[k - j - 1];
        out.values.push_back(-acc);
    }
    return out;
}

// b_H(k) = (1/k) sum_{d | k} mu(k/d) s_H(d)
template <class T>
WittCoeffs<T> witt_b(const Polynomial<T>& H, std::size_t K) {
    const auto s = power_sums(H, K);
    WittCoeffs<T> out;
    out.values.reserve(K);
    for (std::size_t k = 1; k <= K; ++k) {
        T acc(0);
        for (auto d : divisors(k)) {
            const int mu = mobius(k / d);
            if (mu == 1) acc += s(d);
            if (mu == -1) acc -= s(d);
        }
        out.values.push_back(detail::divide_by(acc, k));
    }
    return out;
}

/// max(2, |a_1| + ... + |a_d|): dominates the inverse of every root.
template <class T>
double beta_bound(const Polynomial<T>& H) {
    detail::require_unit_constant(H, "beta_bound");
    double sum = 0.0;
    for (std::size_t j = 1; j <= H.degree(); ++j) sum += detail::magnitude(H[j]);
    return std::max(2.0, sum);
}

/// c_j = b_{G-F}(j) - b_G(j) for j = 1..J, so 1 - F/G = prod_j (1 - t^j)^{c_j}.
template <class T>
std::vector<T> lambert_log_expand(const Polynomial<T>& F, const Polynomial<T>& G, std::size_t J) {
    detail::require(!G.is_zero() && G[0] == T(1), errc::invalid_argument, "expansion requires G(0) = 1");
    detail::require(F[0] == T(0), errc::invalid_argument, "expansion requires F(0) = 0");
    const auto bg = witt_b(G, J);
    const auto bgf = witt_b(G - F, J);
    std::vector<T> out(J);
    for (std::size_t j = 1; j <= J; ++j) out[j - 1] = bgf(j) - bg(j);
    return out;
}

/// kappa_1(d) = d, kappa_f(d) = d^f - d^{f-1}; partial sums telescope to d^F.
template <class T>
T kappa(const T& d, std::uint64_t f) {
    detail::require(f >= 1, errc::invalid_argument, "kappa requires f >= 1");
    if (f == 1) return d;
    return detail::power(d, f) - detail::power(d, f - 1);
}

/**
 * e_f(d) = sum_{g | f} mu(f/g) d^g, the coefficients for which
 *
 *     sum_k d^k x^k / k = sum_f (e_f(d)/f) sum_g x^{fg} / g.
 *
 * e_1 and e_2 coincide with kappa; from f = 3 on they differ (e_3(d) = d^3 - d).
 */
template <class T>
T log_expansion_coeff(const T& d, std::uint64_t f) {
    detail::require(f >= 1, errc::invalid_argument, "log_expansion_coeff requires f >= 1");
    T acc(0);
    for (auto g : divisors(f)) {
        const int mu = mobius(f / g);
        if (mu == 1) acc += detail::power(d, g);
        if (mu == -1) acc -= detail::power(d, g);
    }
    return acc;
}

using MultiIndex = std::vector<int>;

/// Exact M(m) = (1/N) sum_{d | gcd(m)} mu(d) (N/d)! / prod (m_i/d)!.
inline BigInt necklace_m(std::span<const int> m) {
    int N = 0, g = 0;
    for (int mi : m) {
        detail::require(mi >= 0, errc::invalid_argument, "necklace_m requires m_i >= 0");
        N += mi;
        g = std::gcd(g, mi);
    }
    detail::require(N >= 1, errc::invalid_argument, "necklace_m requires m_1 + ... + m_k >= 1");

    std::vector<BigInt> fact(static_cast<std::size_t>(N) + 1, BigInt(1));
    for (int i = 2; i <= N; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;

    BigInt acc = 0;
    for (auto d64 : divisors(static_cast<std::uint64_t>(g))) {
        const int d = static_cast<int>(d64);
        const int mu = mobius(d64);
        if (mu == 0) continue;
        BigInt multinomial = fact[static_cast<std::size_t>(N / d)];
        for (int mi : m) multinomial /= fact[static_cast<std::size_t>(mi / d)];
        acc += mu * multinomial;
    }
    detail::require(acc % N == 0, errc::internal_error, "necklace count is not an integer");
    return acc / N;
}

inline BigInt necklace_m(std::initializer_list<int> m) { return necklace_m(std::span<const int>(m.begin(), m.size())); }

/// All m in N^k with 1 <= m_1 + ... + m_k <= n_max, lexicographic.
inline std::vector<MultiIndex> multi_indices(int k, int n_max) {
    detail::require(k >= 1 && n_max >= 1, errc::invalid_argument, "multi_indices requires k, n_max >= 1");
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == k) {
            if (remaining < n_max) out.push_back(cur);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            cur[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, remaining - v);
        }
    };
    rec(rec, 0, n_max);
    return out;
}

struct NecklaceTable {
    int k = 0;
    int n_max = 0;
    std::vector<std::pair<MultiIndex, BigInt>> entries;  // lexicographic
};

inline NecklaceTable necklace_table(int k, int n_max) {
    NecklaceTable t{k, n_max, {}};
    for (auto& m : multi_indices(k, n_max)) {
        auto M = necklace_m(m);
        t.entries.emplace_back(std::move(m), std::move(M));
    }
    return t;
}

}  // namespace eulerap

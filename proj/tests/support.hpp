#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance runner. Nothing here calls into the engine's evaluation paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "eulerap.hpp"

namespace support {

using eulerap::BigInt;
using eulerap::BigRational;
using eulerap::ComplexVal;

/// One cell of the L-series grid.
struct LCell {
    ComplexVal s;
    std::uint64_t q;
    std::size_t chi;
    std::uint64_t P;
};

inline std::vector<LCell> lseries_grid() {
    std::vector<LCell> out;
    for (double sigma : {1.5, 2.0, 3.0})
        for (double t : {0.0, 1.0, 10.0})
            for (std::uint64_t q : {1u, 3u, 4u, 5u, 8u}) {
                const auto n = eulerap::euler_phi(q);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::uint64_t P : {2u, 10u, 100u}) out.push_back({{sigma, t}, q, i, P});
            }
    return out;
}

struct BranchCheck {
    double identity_error = 0.0;  // |exp(log L_P) - L prod_{p<P}(1 - chi(p) p^-s)|
    double allowed = 0.0;         // propagated bounds plus rounding
    double imag = 0.0;
};

/// exp(log L_P(s, chi)) against L(s, chi) with the Euler factors below P removed.
inline BranchCheck check_branch(const LCell& c, const eulerap::PrimeTable& primes) {
    const auto group = eulerap::character_group(c.q);
    const auto& chi = group[c.chi];
    const auto logl = eulerap::log_truncated_l(c.s, chi, c.P, primes);
    const auto l = eulerap::dirichlet_l(c.s, chi);
    ComplexVal removed = 1.0;
    for (auto p : primes.below(c.P))
        if (!chi.is_zero(p)) removed *= 1.0 - chi.value(p) * eulerap::neg_pow(double(p), c.s);
    const ComplexVal target = l.value * removed;
    BranchCheck out;
    out.identity_error = std::abs(std::exp(logl.value) - target);
    out.allowed = eulerap::exp_radius(logl.value, logl.bound) + l.bound * std::abs(removed) + 1e-13 * std::abs(target);
    out.imag = std::abs(logl.value.imag());
    return out;
}

/// Truncated formal power series in k variables with exact integer coefficients, total degree <= n.
class Series {
public:
    using Key = std::vector<int>;

    Series(int k, int n) : k_(k), n_(n) {}

    static Series one(int k, int n) {
        Series s(k, n);
        s.c_[Key(static_cast<std::size_t>(k), 0)] = 1;
        return s;
    }

    int vars() const { return k_; }
    int degree_cap() const { return n_; }
    const std::map<Key, BigInt>& coeffs() const { return c_; }
    BigInt& operator[](const Key& m) { return c_[m]; }

    Series operator*(const Series& o) const {
        Series out(k_, n_);
        for (const auto& [a, x] : c_)
            for (const auto& [b, y] : o.c_) {
                Key m(a.size());
                int deg = 0;
                for (std::size_t i = 0; i < a.size(); ++i) deg += (m[i] = a[i] + b[i]);
                if (deg <= n_) out.c_[m] += x * y;
            }
        out.prune();
        return out;
    }

    bool operator==(const Series& o) const {
        auto a = *this, b = o;
        a.prune();
        b.prune();
        return a.c_ == b.c_;
    }

    /// (1 - z^m)^e truncated, for e of either sign.
    static Series binomial_power(int k, int n, const Key& m, const BigInt& e) {
        int deg = 0;
        for (int mi : m) deg += mi;
        Series out = one(k, n);
        // (1 - x)^e = sum_j C(e, j) (-x)^j with the generalized binomial coefficient.
        BigInt coef = 1;
        for (int j = 1; j * deg <= n; ++j) {
            coef = coef * (e - (j - 1)) / j;  // exact: C(e, j) stays integral
            Key mj(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) mj[i] = m[i] * j;
            out.c_[mj] += (j % 2 ? -coef : coef);
        }
        out.prune();
        return out;
    }

private:
    void prune() {
        for (auto it = c_.begin(); it != c_.end();) it = it->second == 0 ? c_.erase(it) : std::next(it);
    }

    int k_, n_;
    std::map<Key, BigInt> c_;
};

/// prod_{1 <= |m| <= n} (1 - z^m)^{M(m)} == 1 - z_1 - ... - z_k through total degree n, exactly.
inline bool witt_identity_holds(int k, int n_max) {
    Series prod = Series::one(k, n_max);
    for (const auto& [m, M] : eulerap::necklace_table(k, n_max).entries) {
        if (M == 0) continue;
        prod = prod * Series::binomial_power(k, n_max, m, M);
    }
    Series target = Series::one(k, n_max);
    for (int i = 0; i < k; ++i) {
        Series::Key e(static_cast<std::size_t>(k), 0);
        e[static_cast<std::size_t>(i)] = 1;
        target[e] = -1;
    }
    return prod == target;
}

/// Exact coefficients [t^1..t^J] of log(1 - F(t)/G(t)) via rational series arithmetic.
inline std::vector<BigRational> log_series_rational(const std::vector<BigRational>& F, const std::vector<BigRational>& G,
                                                    std::size_t J) {
    auto at = [](const std::vector<BigRational>& v, std::size_t i) { return i < v.size() ? v[i] : BigRational(0); };
    // H = (G - F)/G as a power series, then log H by H' = H (log H)'.
    std::vector<BigRational> inv(J + 1), H(J + 1);
    inv[0] = 1 / at(G, 0);
    for (std::size_t n = 1; n <= J; ++n) {
        BigRational acc = 0;
        for (std::size_t j = 1; j <= n; ++j) acc += at(G, j) * inv[n - j];
        inv[n] = -acc * inv[0];
    }
    for (std::size_t n = 0; n <= J; ++n)
        for (std::size_t j = 0; j <= n; ++j) H[n] += (at(G, j) - at(F, j)) * inv[n - j];
    // n H_n = sum_{j=1}^{n} j L_j H_{n-j}
    std::vector<BigRational> L(J + 1);
    for (std::size_t n = 1; n <= J; ++n) {
        BigRational acc = BigRational(static_cast<long long>(n)) * H[n];
        for (std::size_t j = 1; j < n; ++j) acc -= BigRational(static_cast<long long>(j)) * L[j] * H[n - j];
        L[n] = acc / (BigRational(static_cast<long long>(n)) * H[0]);
    }
    return {L.begin() + 1, L.end()};
}

/// Coefficients of log prod_j (1 - t^j)^{c_j}, i.e. -sum_j c_j sum_g t^{jg}/g.
inline std::vector<BigRational> log_series_from_exponents(const std::vector<BigInt>& c, std::size_t J) {
    std::vector<BigRational> out(J);
    for (std::size_t j = 1; j <= c.size(); ++j)
        for (std::size_t g = 1; j * g <= J; ++g)
            out[j * g - 1] -= BigRational(c[j - 1]) / BigRational(static_cast<long long>(g));
    return out;
}

/// A random product spec for the bound-honesty sweep; `kind` picks the product family.
struct RandomSpec {
    int kind = 0;  // 0 AP, 1 rational, 2 multi-term
    eulerap::APProductSpec ap;
    eulerap::RationalProductSpec rational;
    eulerap::MultiTermSpec multi;
};

inline RandomSpec random_spec(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::uint64_t moduli[] = {1, 3, 4, 5, 7, 8, 12};
    auto pick_q = [&] { return moduli[rng() % std::size(moduli)]; };
    auto pick_a = [&](std::uint64_t q) {
        for (;;) {
            const std::uint64_t a = 1 + rng() % q;
            if (std::gcd(a, q) == 1) return a % q == 0 ? q : a;
        }
    };
    RandomSpec r;
    r.kind = kind(rng);
    const std::uint64_t q = pick_q(), a = pick_a(q);
    const ComplexVal s(1.5 + 2.0 * unit(rng), 4.0 * unit(rng) - 2.0);
    if (r.kind == 0) {
        r.ap = {s, q, a, 2 + rng() % 30, 3 + static_cast<int>(rng() % 6)};
    } else if (r.kind == 1) {
        std::vector<ComplexVal> F(4, 0.0), G(3, 0.0);
        G[0] = 1.0;
        for (std::size_t j = 2; j < F.size(); ++j) F[j] = {2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0};
        for (std::size_t j = 1; j < G.size(); ++j) G[j] = {unit(rng) - 0.5, unit(rng) - 0.5};
        r.rational.F = eulerap::CPolynomial(F);
        r.rational.G = eulerap::CPolynomial(G);
        r.rational.q = q;
        r.rational.a = a;
        const double beta = eulerap::rational_beta(r.rational);
        r.rational.P = static_cast<std::uint64_t>(std::ceil(2 * beta)) + rng() % 20;
        r.rational.L = 3 + static_cast<int>(rng() % 4);
    } else {
        const int k = 1 + static_cast<int>(rng() % 2);
        for (int i = 0; i < k; ++i) {
            const double u = 1.0 + std::floor(2 * unit(rng));
            r.multi.terms.push_back({{unit(rng) - 0.5, unit(rng) - 0.5}, u, u > 1.0 ? -0.5 : 0.0});
        }
        r.multi.s = s;
        r.multi.q = q;
        r.multi.a = a;
        double A = 0.0;
        for (const auto& t : r.multi.terms) A += std::abs(t.coeff);
        r.multi.P = static_cast<std::uint64_t>(std::ceil(2 * k * std::max(A, 1.0))) + 2 + rng() % 20;
        r.multi.L = std::max(k, 3 + static_cast<int>(rng() % 4));
    }
    return r;
}

}  // namespace support

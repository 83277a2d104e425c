#pragma once

/**
 * @file engine.hpp
 * @brief Euler products over primes p = a mod q, p >= P, with error bounds.
 *
 * Three product shapes are supported:
 *
 *   ap_product          prod (1 - p^{-s})
 *   rational_product    prod (1 - F(1/p)/G(1/p)),  F(0) = F'(0) = 0, G(0) = 1
 *   multi_term_product  prod (1 - sum_l a_l p^{-(u_l s + v_l)})
 *
 * All of them reduce to Y_P(s; q, a | L), a finite combination of logs of
 * truncated Dirichlet L-functions approximating sum_{p = a (q), p >= P}
 * log(1 - p^{-s}). Every ProductResult carries `total_bound`, an absolute
 * bound on the error of `log_value`.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "eulerap/arithmetic.hpp"
#include "eulerap/characters.hpp"
#include "eulerap/error.hpp"
#include "eulerap/lseries.hpp"
#include "eulerap/parallel.hpp"
#include "eulerap/sieve.hpp"
#include "eulerap/witt.hpp"

namespace eulerap {

/// Shared, read-only inputs of every evaluation.
struct Context {
    std::shared_ptr<const PrimeTable> primes;
    EvalParams params;
    unsigned threads = 1;
};

inline Context make_context(std::uint64_t prime_limit = 1'000'000, EvalParams params = {}, unsigned threads = 1) {
    return Context{std::make_shared<const PrimeTable>(sieve(prime_limit)), params, threads};
}

struct APProductSpec {
    ComplexVal s{2.0, 0.0};
    std::uint64_t q = 1;
    std::uint64_t a = 1;
    std::uint64_t P = 2;
    int L = 2;
};

struct RationalProductSpec {
    CPolynomial F;
    CPolynomial G{std::complex<double>(1.0)};
    std::uint64_t q = 1;
    std::uint64_t a = 1;
    std::uint64_t P = 2;
    int L = 2;
};

struct MultiTerm {
    ComplexVal coeff;
    double u = 1.0;
    double v = 0.0;
};

struct MultiTermSpec {
    std::vector<MultiTerm> terms;
    ComplexVal s{2.0, 0.0};
    std::uint64_t q = 1;
    std::uint64_t a = 1;
    std::uint64_t P = 2;
    int L = 2;
};

struct ProductResult {
    ComplexVal log_value{0.0, 0.0};
    double total_bound = 0.0;
    /// Closed-form truncation estimate for the product type, for reference.
    double closed_form_bound = 0.0;

    ComplexVal value() const { return std::exp(log_value); }
    /// The product lies within value() * exp(+-total_bound).
    std::pair<double, double> interval_factors() const { return {std::exp(-total_bound), std::exp(total_bound)}; }
    ValueWithBound value_with_bound() const { return {value(), exp_radius(log_value, total_bound)}; }
};

/**
 * Bound on the terms l > L dropped from Y_P(s; q, a | L):
 * sum_{l > L} 2^{omega(l)}/l * sum_{n >= P} n^{-l sigma}, floored at P^{-L sigma}.
 */
inline double ap_truncation_bound(std::uint64_t P, int L, double sigma) {
    const double Pd = double(P);
    double sum = 0.0;
    for (int l = L + 1;; ++l) {
        const double term = std::ldexp(1.0, omega(static_cast<std::uint64_t>(l))) / l * tail_majorant(Pd, l * sigma);
        sum += term;
        if (term <= 1e-20 * sum || l > L + 400) {
            sum += tail_majorant(Pd, (l + 1) * sigma) / (1.0 - std::pow(Pd, -sigma));
            break;
        }
    }
    return std::max(std::pow(Pd, -L * sigma), sum);
}

/**
 * Evaluates Y_P(s; q, a | L) for a fixed (q, a), reusing the character group.
 *
 *   Y = - sum_{l <= L} (1/l) sum_{d | l} mu(d) sum_chi conj(chi(a))/phi(q) log L_P(l s, chi^d)
 *
 * For each d the characters are grouped by psi = chi^d, so each distinct
 * log L_P(l s, psi) is computed once.
 */
class YEvaluator {
public:
    static constexpr int kDefaultMaxL = 64;

    YEvaluator(const Context& ctx, std::uint64_t q, std::uint64_t a, int max_l = kDefaultMaxL)
        : ctx_(&ctx), q_(q), a_(a), max_l_(max_l), group_(q) {
        detail::require(ctx.primes != nullptr, errc::invalid_argument, "context has no prime table");
        detail::require(std::gcd(a, q) == 1, errc::invalid_argument, "residue a must be invertible mod q");
        const auto N = static_cast<std::uint64_t>(group_.exponent());
        weights_.resize(N);
        std::vector<bool> done(N, false);
        for (std::uint64_t d = 1; d <= static_cast<std::uint64_t>(max_l); ++d) {
            if (mobius(d) == 0 || done[d % N]) continue;
            done[d % N] = true;
            weights_[d % N] = compute_weights(d);
        }
    }

    std::uint64_t modulus() const noexcept { return q_; }
    std::uint64_t residue() const noexcept { return a_; }
    const CharacterGroup& group() const noexcept { return group_; }

    /// Y and the accumulated L-evaluation bound (truncation in l excluded).
    ValueWithBound operator()(ComplexVal s, std::uint64_t P, int L) const {
        detail::require(s.real() > 1.0, errc::invalid_argument, "Y requires Re s > 1");
        detail::require(P >= 2 && L >= 1, errc::invalid_argument, "Y requires P >= 2 and L >= 1");
        detail::require(L <= max_l_, errc::invalid_argument, "L exceeds the evaluator's precomputed range");
        const auto& params = ctx_->params;
        const double negligible = 1e-3 * params.target_eps;

        ValueWithBound y;
        for (int l = 1; l <= L; ++l) {
            const ComplexVal arg = double(l) * s;
            const double majorant = tail_majorant(double(P), arg.real());
            if (majorant <= negligible) {
                // each log L_P(l s, .) is at most the majorant; the weights sum to <= 2^omega(l)/l
                y.bound += std::ldexp(1.0, omega(static_cast<std::uint64_t>(l))) / l * majorant;
                continue;
            }
            for (auto d : divisors(static_cast<std::uint64_t>(l))) {
                const int mu = mobius(d);
                if (mu == 0) continue;
                for (const auto& [psi_index, weight] : weights_[d % weights_.size()]) {
                    const auto term = log_truncated_l(arg, group_[psi_index], P, *ctx_->primes, params);
                    const ComplexVal c = -double(mu) / double(l) * weight;
                    y += c * term;
                }
            }
        }
        return y;
    }

private:
    /// Nonzero sums of conj(chi(a))/phi(q) over chi with chi^d = psi, by psi index.
    std::vector<std::pair<std::size_t, ComplexVal>> compute_weights(std::uint64_t d) const {
        std::vector<ComplexVal> acc(group_.size(), 0.0);
        const double phi = double(group_.size());
        for (const auto& chi : group_.characters())
            acc[group_.index_of(char_pow(chi, d))] += chi.conj_value(a_) / phi;
        std::vector<std::pair<std::size_t, ComplexVal>> out;
        for (std::size_t i = 0; i < acc.size(); ++i)
            if (std::abs(acc[i]) > 1e-15) out.emplace_back(i, acc[i]);
        return out;
    }

    const Context* ctx_;
    std::uint64_t q_;
    std::uint64_t a_;
    int max_l_;
    CharacterGroup group_;
    std::vector<std::vector<std::pair<std::size_t, ComplexVal>>> weights_;  // by d mod exponent
};

/// Y_P(s; q, a | L) with the L-evaluation bound only.
inline ValueWithBound y_p(ComplexVal s, std::uint64_t q, std::uint64_t a, std::uint64_t P, int L, const Context& ctx) {
    detail::require(s.real() > 1.0, errc::invalid_argument, "Y requires Re s > 1");
    detail::require(q >= 1, errc::invalid_argument, "modulus q must be >= 1");
    detail::require(P >= 2 && L >= 2, errc::invalid_argument, "Y requires P >= 2 and L >= 2");
    return YEvaluator(ctx, q, a, std::max(L, YEvaluator::kDefaultMaxL))(s, P, L);
}

namespace detail {

inline void validate_common(std::uint64_t q, std::uint64_t a, std::uint64_t P, int L, int min_L = 2) {
    require(q >= 1, errc::invalid_argument, "modulus q must be >= 1");
    require(std::gcd(a, q) == 1, errc::invalid_argument, "residue a must be invertible mod q");
    require(P >= 2, errc::invalid_argument, "P must be >= 2");
    require(L >= min_L, errc::invalid_argument, "L must be >= " + std::to_string(min_L));
}

}  // namespace detail

inline ProductResult ap_product(const APProductSpec& spec, const Context& ctx) {
    detail::require(spec.s.real() > 1.0, errc::invalid_argument, "AP product requires Re s > 1");
    detail::validate_common(spec.q, spec.a, spec.P, spec.L);
    const auto y = y_p(spec.s, spec.q, spec.a, spec.P, spec.L, ctx);
    const double structural = ap_truncation_bound(spec.P, spec.L, spec.s.real());
    return {y.value, y.bound + structural, std::pow(double(spec.P), -spec.L * spec.s.real())};
}

inline double rational_beta(const RationalProductSpec& spec) {
    return std::max(beta_bound(spec.G), beta_bound(spec.G - spec.F));
}

inline void validate(const RationalProductSpec& spec) {
    detail::validate_common(spec.q, spec.a, spec.P, spec.L);
    detail::require(!spec.G.is_zero() && spec.G[0] == ComplexVal(1.0), errc::invalid_argument,
                    "rational product requires G(0)=1");
    detail::require(spec.F[0] == ComplexVal(0.0) && spec.F[1] == ComplexVal(0.0), errc::invalid_argument,
                    "rational product requires F(0)=F'(0)=0");
    const double beta = rational_beta(spec);
    detail::require(double(spec.P) >= 2.0 * beta, errc::invalid_argument,
                    "rational product requires P >= 2*beta (beta = " + std::to_string(beta) + ")");
}

/**
 * log prod (1 - F(1/p)/G(1/p)) = sum_{2 <= j <= 2L} (b_{G-F}(j) - b_G(j)) Y_P(j; q, a | L) + I,
 * |I| <= 8 max(deg(G-F), deg G) beta^2 (beta/P)^{2L}.
 */
inline ProductResult rational_product(const RationalProductSpec& spec, const Context& ctx) {
    validate(spec);
    const double beta = rational_beta(spec);
    const std::size_t J = 2 * static_cast<std::size_t>(spec.L);
    const auto coeffs = lambert_log_expand(spec.F, spec.G, J);
    detail::require(std::abs(coeffs[0]) < 1e-9, errc::internal_error, "first Witt difference should vanish");

    const YEvaluator Y(ctx, spec.q, spec.a, std::max(spec.L, YEvaluator::kDefaultMaxL));
    std::vector<ValueWithBound> terms(J + 1);
    detail::parallel_for(J - 1, ctx.threads, [&](std::size_t i) {
        const std::size_t j = i + 2;
        const ComplexVal c = coeffs[j - 1];
        if (c == ComplexVal(0.0)) return;
        terms[j] = c * Y(ComplexVal(double(j), 0.0), spec.P, spec.L);
    });

    ProductResult out;
    for (std::size_t j = 2; j <= J; ++j) {
        out.log_value += terms[j].value;
        out.total_bound += terms[j].bound;
    }
    const double deg = double(std::max((spec.G - spec.F).degree(), spec.G.degree()));
    out.closed_form_bound = 8.0 * deg * beta * beta * std::pow(beta / double(spec.P), 2.0 * spec.L);
    out.total_bound += out.closed_form_bound;
    return out;
}

inline double multi_term_A(const MultiTermSpec& spec) {
    double A = 1.0;
    for (const auto& t : spec.terms) A = std::max(A, std::abs(t.coeff));
    return A;
}

inline void validate(const MultiTermSpec& spec) {
    const int k = static_cast<int>(spec.terms.size());
    detail::require(k >= 1, errc::invalid_argument, "multi-term product needs at least one term");
    detail::require(spec.s.real() > 1.0, errc::invalid_argument, "multi-term product requires Re s > 1");
    detail::validate_common(spec.q, spec.a, spec.P, spec.L, std::max(2, k));
    const double A = multi_term_A(spec);
    detail::require(double(spec.P) >= 2.0 * k * A, errc::invalid_argument,
                    "multi-term product requires P >= 2kA (A = " + std::to_string(A) + ")");
    for (const auto& t : spec.terms)
        detail::require(t.u * spec.s.real() + t.v > 1.0, errc::out_of_domain,
                        "multi-term product requires u*Re(s)+v > 1 for every term");
}

/// The closed-form truncation estimate 2^k A^L/(k! P^L) ((L+k)^k + 1 + log L + 3kA/L).
inline double multi_term_closed_form_bound(int k, double A, std::uint64_t P, int L) {
    const double pref = std::ldexp(1.0, k) * std::pow(A, L) / (std::tgamma(k + 1.0) * std::pow(double(P), L));
    return pref * (std::pow(double(L + k), k) + 1.0 + std::log(double(L)) + 3.0 * k * A / L);
}

/**
 * log prod (1 - sum_l a_l p^{-w_l}) over p = a (q), p >= P, w_l = u_l s + v_l.
 *
 * Witt's identity factors the local term as prod_m (1 - c(m) p^{-w_m})^{M(m)}
 * with c(m) = prod a_l^{m_l}, w_m = sum m_l w_l. Each factor expands as
 * log(1 - c x) = sum_f (e_f(c)/f) log(1 - x^f), so
 *
 *   log prod = sum_{1 <= |m| <= L} M(m) sum_{f <= L} (e_f(c(m))/f) Y_P(f w_m) + I.
 *
 * The bound on I collects: the |m| > L tail, the f > L tail for each m, and
 * the truncation and evaluation bounds of every Y used.
 */
inline ProductResult multi_term_product(const MultiTermSpec& spec, const Context& ctx) {
    validate(spec);
    const int k = static_cast<int>(spec.terms.size());
    const int L = spec.L;
    const double A = multi_term_A(spec);
    const double sigma = spec.s.real();
    const double Pd = double(spec.P);
    const double prune = 1e-3 * ctx.params.target_eps;

    double rho_min = INFINITY, coeff_sum = 0.0;
    std::vector<ComplexVal> w(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const auto& t = spec.terms[static_cast<std::size_t>(i)];
        w[static_cast<std::size_t>(i)] = t.u * spec.s + t.v;
        rho_min = std::min(rho_min, t.u * sigma + t.v);
        coeff_sum += std::abs(t.coeff);
    }

    const YEvaluator Y(ctx, spec.q, spec.a, std::max(L, YEvaluator::kDefaultMaxL));
    const auto indices = multi_indices(k, L);
    std::vector<ProductResult> parts(indices.size());

    detail::parallel_for(indices.size(), ctx.threads, [&](std::size_t idx) {
        const auto& m = indices[idx];
        const double M = static_cast<double>(necklace_m(m));
        if (M == 0.0) return;
        ComplexVal c = 1.0, wm = 0.0;
        int N = 0;
        for (int i = 0; i < k; ++i) {
            const int mi = m[static_cast<std::size_t>(i)];
            for (int r = 0; r < mi; ++r) c *= spec.terms[static_cast<std::size_t>(i)].coeff;
            wm += double(mi) * w[static_cast<std::size_t>(i)];
            N += mi;
        }
        const double R = wm.real();
        auto& part = parts[idx];
        for (int f = 1; f <= L; ++f) {
            const ComplexVal weight = M * log_expansion_coeff(c, static_cast<std::uint64_t>(f)) / double(f);
            if (weight == ComplexVal(0.0)) continue;
            const double fR = f * R;
            const double structural = ap_truncation_bound(spec.P, L, fR);
            const double size = std::abs(weight) * (1.5 * tail_majorant(Pd, fR) + structural);
            if (size <= prune) {
                part.total_bound += size;
                continue;
            }
            const auto y = Y(double(f) * wm, spec.P, L);
            part.log_value += weight * y.value;
            part.total_bound += std::abs(weight) * (y.bound + structural);
        }
        // f > L tail: |e_f(c)| <= f D^f, D = max(1,|c|), D p^{-R} <= 1/2
        const double D = std::max(1.0, std::abs(c));
        part.total_bound += 3.0 * M * std::pow(D, L + 1) * tail_majorant(Pd, R * (L + 1));
    });

    ProductResult out;
    for (const auto& part : parts) {
        out.log_value += part.log_value;
        out.total_bound += part.total_bound;
    }
    // |m| > L tail, from the graded identity applied to r = sum |a_l| p^{-rho_l} <= 1/2
    out.total_bound += 2.0 * std::pow(coeff_sum, L + 1) / (L + 1) * tail_majorant(Pd, rho_min * (L + 1));
    out.closed_form_bound = multi_term_closed_form_bound(k, A, spec.P, L);
    return out;
}

/**
 * D(s) = prod_p (1 + p^{-s} - p^{1-2s}) through
 *
 *   D(s) = zeta(s) / (zeta(2s) zeta(2s-1)) * prod_{m1, m2 >= 1} prod_p (1 - (-1)^{m1} p^{-w})^{M(m1,m2)},
 *   w = (m1 + 2 m2) s - m2,
 *
 * keeping the pairs with m1 + 2 m2 <= n_max. Only Re s > 1 is evaluated:
 * the zeta factors would need values left of the line Re = 1 otherwise.
 */
inline ProductResult continuation_demo(ComplexVal s, int n_max, const Context& ctx, int L = 10) {
    const double sigma = s.real();
    detail::require(sigma > 0.5, errc::out_of_domain, "continuation demo requires Re s > 1/2");
    detail::require(sigma > 1.0, errc::out_of_domain,
                    "continuation demo needs zeta at s, 2s, 2s-1 with real part > 1, i.e. Re s > 1");
    detail::require(n_max >= 3, errc::invalid_argument, "continuation demo requires n_max >= 3");
    detail::require(L >= 2, errc::invalid_argument, "continuation demo requires L >= 2");

    const auto& primes = *ctx.primes;
    const CharacterGroup trivial(1);
    const auto& one = trivial[0];
    auto log_zeta = [&](ComplexVal x) { return log_truncated_l(x, one, 2, primes, ctx.params); };

    ProductResult out;
    const auto front = log_zeta(s) - log_zeta(2.0 * s) - log_zeta(2.0 * s - 1.0);
    out.log_value = front.value;
    out.total_bound = front.bound;

    const YEvaluator Y(ctx, 1, 1, std::max(L, YEvaluator::kDefaultMaxL));
    auto y_full = [&](ComplexVal x) {
        auto y = Y(x, 2, L);
        y.bound += ap_truncation_bound(2, L, x.real());
        return y;
    };

    std::vector<std::pair<int, int>> pairs;
    for (int m2 = 1; 2 * m2 + 1 <= n_max; ++m2)
        for (int m1 = 1; m1 + 2 * m2 <= n_max; ++m1) pairs.emplace_back(m1, m2);
    std::sort(pairs.begin(), pairs.end());

    std::vector<ValueWithBound> parts(pairs.size());
    detail::parallel_for(pairs.size(), ctx.threads, [&](std::size_t i) {
        const auto [m1, m2] = pairs[i];
        const double M = static_cast<double>(necklace_m({m1, m2}));
        if (M == 0.0) return;
        const ComplexVal wv = double(m1 + 2 * m2) * s - double(m2);
        // log(1 + x) = log(1 - x^2) - log(1 - x)
        const ValueWithBound inner = (m1 % 2 == 0) ? y_full(wv) : y_full(2.0 * wv) - y_full(wv);
        parts[i] = ComplexVal(M) * inner;
    });
    for (const auto& p : parts) {
        out.log_value += p.value;
        out.total_bound += p.bound;
    }

    // Omitted pairs: M(m1,m2) <= C(N, m1)/N and |sum_p log(1 -+ p^{-w})| <= 1.5 sum_{n>=2} n^{-Re w}.
    const int n_cut = n_max + 80;
    double omitted = 0.0;
    for (int N = 2; N <= n_cut; ++N)
        for (int m1 = 1; m1 < N; ++m1) {
            const int m2 = N - m1;
            if (m1 + 2 * m2 <= n_max) continue;
            const double log_binom = std::lgamma(N + 1.0) - std::lgamma(m1 + 1.0) - std::lgamma(m2 + 1.0);
            omitted += std::exp(log_binom) / N * 1.5 * tail_majorant(2.0, m1 * sigma + m2 * (2 * sigma - 1));
        }
    const double sigma_star = std::min(sigma, 2 * sigma - 1);
    const double r = std::pow(2.0, -sigma) + std::pow(2.0, 1 - 2 * sigma);
    omitted += 1.5 * (1.0 + 2.0 / ((n_cut + 1) * sigma_star - 1)) * std::pow(r, n_cut + 1) / ((n_cut + 1) * (1 - r));
    out.total_bound += omitted;
    out.closed_form_bound = omitted;
    return out;
}

}  // namespace eulerap

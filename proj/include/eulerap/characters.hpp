#pragma once

/**
 * @file characters.hpp
 * @brief The group of Dirichlet characters modulo q with exact values.
 *
 * (Z/qZ)* is split along the prime-power factors of q. Odd p^e is cyclic
 * and generated by a primitive root; 4 is generated by -1; 2^e with e >= 3
 * is <-1> x <5>. A character is a tuple of exponents, one per generator,
 * and its value at n is exp(2 pi i * angle / N), where N is the exponent of
 * the group and the angle is an integer mod N obtained from discrete logs.
 * Values stay exact until `value()` converts them to floating complex.
 */

#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "eulerap/arithmetic.hpp"
#include "eulerap/error.hpp"

namespace eulerap {

/// Reduced rational r/N in [0,1), standing for exp(2 pi i r/N).
struct Angle {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const Angle&, const Angle&) = default;
    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline Angle make_angle(std::int64_t num, std::int64_t den) {
    num %= den;
    if (num < 0) num += den;
    const auto g = std::gcd(num, den);
    return g ? Angle{num / g, den / g} : Angle{0, 1};
}

/// exp(2 pi i num/den), exact for the quarter turns.
inline std::complex<double> root_of_unity(std::int64_t num, std::int64_t den) {
    const Angle a = make_angle(num, den);
    if (a.num == 0) return {1.0, 0.0};
    if (a.den == 2) return {-1.0, 0.0};
    if (a.den == 4) return a.num == 1 ? std::complex<double>{0.0, 1.0} : std::complex<double>{0.0, -1.0};
    const double t = 2.0 * std::numbers::pi * double(a.num) / double(a.den);
    return {std::cos(t), std::sin(t)};
}

class DirichletCharacter {
public:
    static constexpr std::int32_t kZero = -1;

    DirichletCharacter() = default;
    DirichletCharacter(std::uint64_t modulus, std::int64_t exponent, std::vector<std::int32_t> angles,
                       std::vector<std::int64_t> tuple)
        : modulus_(modulus), exponent_(exponent), angles_(std::move(angles)), tuple_(std::move(tuple)) {
        std::int64_t g = exponent_;
        for (auto a : angles_)
            if (a != kZero) g = std::gcd(g, std::int64_t{a});
        order_ = exponent_ / g;
    }

    std::uint64_t modulus() const noexcept { return modulus_; }
    std::uint64_t order() const noexcept { return static_cast<std::uint64_t>(order_); }
    /// Common denominator N of every angle in the table.
    std::int64_t exponent() const noexcept { return exponent_; }
    /// Exponents of the generator images, in group component order.
    const std::vector<std::int64_t>& tuple() const noexcept { return tuple_; }

    bool is_zero(std::uint64_t n) const { return angles_[n % modulus_] == kZero; }
    bool is_principal() const noexcept { return order_ == 1; }

    /// Raw angle numerator over exponent(), or kZero.
    std::int32_t raw_angle(std::uint64_t n) const { return angles_[n % modulus_]; }

    /// Reduced angle; only meaningful when !is_zero(n).
    Angle angle(std::uint64_t n) const { return make_angle(angles_[n % modulus_], exponent_); }

    std::complex<double> value(std::uint64_t n) const {
        const auto a = angles_[n % modulus_];
        if (a == kZero) return {0.0, 0.0};
        return root_of_unity(a, exponent_);
    }

    std::complex<double> conj_value(std::uint64_t n) const { return std::conj(value(n)); }

    friend bool operator==(const DirichletCharacter& x, const DirichletCharacter& y) {
        return x.modulus_ == y.modulus_ && x.exponent_ == y.exponent_ && x.angles_ == y.angles_;
    }

private:
    std::uint64_t modulus_ = 1;
    std::int64_t exponent_ = 1;
    std::int64_t order_ = 1;
    std::vector<std::int32_t> angles_{0};
    std::vector<std::int64_t> tuple_;
};

/// chi^d; chi^0 is the principal character.
inline DirichletCharacter char_pow(const DirichletCharacter& chi, std::uint64_t d) {
    const std::int64_t N = chi.exponent();
    const std::int64_t dm = static_cast<std::int64_t>(d % static_cast<std::uint64_t>(N));
    std::vector<std::int32_t> angles(chi.modulus());
    for (std::uint64_t n = 0; n < chi.modulus(); ++n) {
        const auto a = chi.raw_angle(n);
        angles[n] = a == DirichletCharacter::kZero ? a : static_cast<std::int32_t>((std::int64_t{a} * dm) % N);
    }
    std::vector<std::int64_t> tuple = chi.tuple();
    for (auto& t : tuple) t *= static_cast<std::int64_t>(d);  // reduced by the group on lookup
    return DirichletCharacter(chi.modulus(), N, std::move(angles), std::move(tuple));
}

class CharacterGroup {
public:
    struct Component {
        std::uint64_t modulus;    // prime power the component lives in
        std::uint64_t generator;  // -1 is stored as modulus - 1
        std::int64_t order;
    };

    explicit CharacterGroup(std::uint64_t q) : factored_(factorize(q)) {
        detail::require(q >= 1, errc::invalid_argument, "character group needs q >= 1");
        build_components();
        build_logs();
        enumerate();
    }

    std::uint64_t modulus() const noexcept { return factored_.q; }
    const FactoredModulus& factored() const noexcept { return factored_; }
    std::int64_t exponent() const noexcept { return exponent_; }
    const std::vector<Component>& components() const noexcept { return components_; }
    const std::vector<DirichletCharacter>& characters() const noexcept { return characters_; }
    std::size_t size() const noexcept { return characters_.size(); }
    std::size_t principal_index() const noexcept { return 0; }
    const DirichletCharacter& operator[](std::size_t i) const { return characters_[i]; }

    /// Position of a character of this group (e.g. the output of char_pow).
    std::size_t index_of(const DirichletCharacter& chi) const {
        detail::require(chi.modulus() == modulus() && chi.tuple().size() == components_.size(),
                        errc::invalid_argument, "character does not belong to this group");
        std::size_t idx = 0;
        for (std::size_t c = 0; c < components_.size(); ++c) {
            const auto n = components_[c].order;
            idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(((chi.tuple()[c] % n) + n) % n);
        }
        return idx;
    }

    /// Discrete logs of n, one per component; empty if gcd(n,q) > 1.
    std::vector<std::int64_t> logs(std::uint64_t n) const {
        const auto r = n % modulus();
        if (!coprime_[r]) return {};
        return {logs_.begin() + static_cast<std::ptrdiff_t>(r * components_.size()),
                logs_.begin() + static_cast<std::ptrdiff_t>((r + 1) * components_.size())};
    }

private:
    void build_components() {
        for (auto [p, e] : factored_.factors) {
            std::uint64_t pe = 1;
            for (int i = 0; i < e; ++i) pe *= p;
            if (p == 2) {
                if (e == 2) components_.push_back({4, 3, 2});
                if (e >= 3) {
                    components_.push_back({pe, pe - 1, 2});
                    components_.push_back({pe, 5, static_cast<std::int64_t>(pe / 4)});
                }
            } else {
                components_.push_back({pe, primitive_root(p, e), static_cast<std::int64_t>(pe / p * (p - 1))});
            }
        }
        exponent_ = 1;
        for (const auto& c : components_) exponent_ = std::lcm(exponent_, c.order);
    }

    void build_logs() {
        const std::uint64_t q = modulus();
        const std::size_t k = components_.size();
        coprime_.assign(q, false);
        logs_.assign(q * k, 0);
        for (std::uint64_t n = 0; n < q; ++n) coprime_[n] = std::gcd(n, q) == 1;

        // Per component, walk the generator powers once to get a table over Z/mZ.
        std::vector<std::vector<std::int64_t>> table(k);
        for (std::size_t c = 0; c < k; ++c) {
            const auto& comp = components_[c];
            table[c].assign(comp.modulus, -1);
            const bool two_power = comp.modulus % 2 == 0 && comp.modulus >= 8;
            if (two_power && comp.generator == comp.modulus - 1) {
                // sign component of 2^e: x = (-1)^a 5^b, a = 0 iff x = 1 mod 4
                for (std::uint64_t x = 1; x < comp.modulus; x += 2) table[c][x] = (x % 4 == 1) ? 0 : 1;
            } else if (two_power) {
                std::uint64_t x = 1;
                for (std::int64_t b = 0; b < comp.order; ++b) {
                    table[c][x] = b;
                    table[c][comp.modulus - x] = b;
                    x = x * 5 % comp.modulus;
                }
            } else {
                std::uint64_t x = 1;
                for (std::int64_t j = 0; j < comp.order; ++j) {
                    table[c][x] = j;
                    x = mulmod(x, comp.generator, comp.modulus);
                }
            }
        }
        for (std::uint64_t n = 0; n < q; ++n) {
            if (!coprime_[n]) continue;
            for (std::size_t c = 0; c < k; ++c) {
                const auto v = table[c][n % components_[c].modulus];
                if (v < 0) throw error(errc::internal_error, "discrete log table incomplete");
                logs_[n * k + c] = v;
            }
        }
    }

    void enumerate() {
        const std::uint64_t q = modulus();
        const std::size_t k = components_.size();
        std::size_t count = 1;
        for (const auto& c : components_) count *= static_cast<std::size_t>(c.order);
        characters_.reserve(count);
        std::vector<std::int64_t> tuple(k, 0);
        for (std::size_t idx = 0; idx < count; ++idx) {
            std::size_t rest = idx;
            for (std::size_t c = k; c-- > 0;) {
                tuple[c] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(components_[c].order));
                rest /= static_cast<std::size_t>(components_[c].order);
            }
            std::vector<std::int32_t> angles(q, DirichletCharacter::kZero);
            for (std::uint64_t n = 0; n < q; ++n) {
                if (!coprime_[n]) continue;
                std::int64_t a = 0;
                for (std::size_t c = 0; c < k; ++c)
                    a = (a + tuple[c] * logs_[n * k + c] % components_[c].order * (exponent_ / components_[c].order)) %
                        exponent_;
                angles[n] = static_cast<std::int32_t>(a);
            }
            characters_.emplace_back(q, exponent_, std::move(angles), tuple);
        }
    }

    FactoredModulus factored_;
    std::vector<Component> components_;
    std::int64_t exponent_ = 1;
    std::vector<bool> coprime_;
    std::vector<std::int64_t> logs_;
    std::vector<DirichletCharacter> characters_;
};

inline CharacterGroup character_group(std::uint64_t q) {
    detail::require(q >= 1, errc::invalid_argument, "character group needs q >= 1");
    return CharacterGroup(q);
}

}  // namespace eulerap

#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "eulerap/error.hpp"

namespace eulerap {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Exact B_0..B_n (B_1 = -1/2 convention).
struct BernoulliCache {
    std::vector<BigRational> numbers;

    const BigRational& operator[](std::size_t i) const { return numbers.at(i); }
    std::size_t size() const noexcept { return numbers.size(); }
};

// sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
inline BernoulliCache bernoulli(std::size_t up_to) {
    BernoulliCache cache;
    cache.numbers.reserve(up_to + 1);
    cache.numbers.emplace_back(1);
    std::vector<BigInt> row{1, 1};  // C(m+1, .) for m = 0
    for (std::size_t m = 1; m <= up_to; ++m) {
        std::vector<BigInt> next(row.size() + 1);
        next.front() = next.back() = 1;
        for (std::size_t j = 1; j < row.size(); ++j) next[j] = row[j - 1] + row[j];
        row = std::move(next);
        if (m > 1 && m % 2 == 1) {
            cache.numbers.emplace_back(0);
            continue;
        }
        BigRational acc = 0;
        for (std::size_t j = 0; j < m; ++j) acc += BigRational(row[j]) * cache.numbers[j];
        cache.numbers.push_back(-acc / BigRational(row[m]));
    }
    return cache;
}

}  // namespace eulerap

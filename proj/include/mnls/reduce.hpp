#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace mnls {

// Deterministic pairwise-tree summation. The tree shape depends only on the
// element count, never on thread count or schedule, so every reduction in the
// code base is bitwise reproducible.

inline double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
    const std::size_t n = v.size();
    if (n <= 32) {
        std::complex<double> s{0.0, 0.0};
        for (const auto& x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Pairwise sum of f(i) over [0, n) without materializing the transformed
// array; same tree as above with leaf width 32.
template <class F>
double pairwise_sum_transform(std::size_t n, F&& f, std::size_t offset = 0) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += f(offset + i);
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum_transform(half, f, offset) +
           pairwise_sum_transform(n - half, f, offset + half);
}

}  // namespace mnls

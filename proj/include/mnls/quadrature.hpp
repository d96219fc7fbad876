#pragma once

#include <vector>

namespace mnls {

/// Composite quadrature weights for nodes 0..i on a uniform mesh of width h:
/// Simpson for even prefixes, Simpson + 3/8 for odd ones, trapezoid for a
/// single interval.
inline std::vector<double> composite_weights(int i, double h) {
    std::vector<double> w(i + 1, 0.0);
    if (i <= 0) return w;
    if (i == 1) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    int simpson_end = (i % 2 == 0) ? i : i - 3;
    if (simpson_end >= 2) {
        w[0] += h / 3.0;
        w[simpson_end] += h / 3.0;
        for (int k = 1; k < simpson_end; ++k) w[k] += (k % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
    }
    if (i % 2 == 1) {
        w[i - 3] += 3.0 * h / 8.0;
        w[i - 2] += 9.0 * h / 8.0;
        w[i - 1] += 9.0 * h / 8.0;
        w[i] += 3.0 * h / 8.0;
    }
    return w;
}

}  // namespace mnls

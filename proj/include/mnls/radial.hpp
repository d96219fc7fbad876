#pragma once

#include <vector>

#include "mnls/field.hpp"

namespace mnls {

/// Shell reduction of a sampled field: shells {r : k dr <= |x| < (k+1) dr}
/// with dr = two cell widths. Shell surface integrals are approximated as
/// shell volume integrals divided by dr.
struct RadialProfile {
    double dr = 0.0;
    std::vector<double> sup;        // per-shell sup of |f|
    std::vector<cplx> integral;     // per-shell integral of f
    std::vector<std::int64_t> count;

    int shells() const { return static_cast<int>(sup.size()); }
    double r_mid(int k) const { return (k + 0.5) * dr; }

    /// Trapezoidal quadrature in r of g(shell sup) over the shell midpoints,
    /// plus the leading half-shell. Used for the L^p_r L^inf(S_r) norms.
    template <class Fn>
    double sup_quadrature(Fn&& g) const {
        const int m = shells();
        if (m == 0) return 0.0;
        double acc = 0.5 * dr * g(sup[0]);  // [0, r_mid(0)]
        for (int k = 0; k + 1 < m; ++k) acc += 0.5 * dr * (g(sup[k]) + g(sup[k + 1]));
        acc += 0.5 * dr * g(sup[m - 1]);  // trailing half shell
        return acc;
    }
};

RadialProfile radial_profile(const RealField& f);
RadialProfile radial_profile(const ComplexField& f);

struct AnnulusSup {
    double value = 0.0;
    bool empty = false;
};

/// sup of |f| over samples in C_j = {2^j <= |x| <= 2^{j+1}}; an annulus with
/// no samples (or out of the grid range) returns a flagged empty result.
AnnulusSup dyadic_annulus_sup(const RealField& f, int j);

/// Range of dyadic indices j with 2^j >= one cell width and 2^{j+1} <= L.
struct DyadicRange {
    int j_min = 0;
    int j_max = -1;
    int count() const { return j_max - j_min + 1; }
};
DyadicRange dyadic_range(const Grid& g);

}  // namespace mnls

#include "mnls/radial.hpp"

#include <cmath>

#include "mnls/reduce.hpp"

namespace mnls {

namespace {

template <class FieldT, class AbsFn, class ValFn>
RadialProfile profile_impl(const FieldT& f, AbsFn&& absfn, ValFn&& valfn) {
    const Grid& g = f.grid;
    RadialProfile p;
    p.dr = 2.0 * g.spacing();
    const double r_max = std::sqrt(3.0) * g.box_half_length;
    const int shells = static_cast<int>(std::ceil(r_max / p.dr)) + 1;
    p.sup.assign(shells, 0.0);
    p.count.assign(shells, 0);
    std::vector<std::vector<cplx>> members(shells);

    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const double r = norm(g.point(i1, i2, i3));
                int k = static_cast<int>(r / p.dr);
                if (k >= shells) k = shells - 1;
                const auto val = f.v[g.index(i1, i2, i3)];
                p.sup[k] = std::max(p.sup[k], absfn(val));
                members[k].push_back(valfn(val));
                ++p.count[k];
            }

    p.integral.assign(shells, cplx{0.0, 0.0});
    const double vol = g.cell_volume();
    for (int k = 0; k < shells; ++k)
        p.integral[k] = vol * pairwise_sum(std::span<const cplx>(members[k]));
    return p;
}

}  // namespace

RadialProfile radial_profile(const RealField& f) {
    return profile_impl(f, [](double x) { return std::abs(x); },
                        [](double x) { return cplx{x, 0.0}; });
}

RadialProfile radial_profile(const ComplexField& f) {
    return profile_impl(f, [](const cplx& z) { return std::abs(z); },
                        [](const cplx& z) { return z; });
}

AnnulusSup dyadic_annulus_sup(const RealField& f, int j) {
    const Grid& g = f.grid;
    const double lo = std::exp2(j), hi = std::exp2(j + 1);
    AnnulusSup out;
    std::int64_t hits = 0;
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const double r = norm(g.point(i1, i2, i3));
                if (r < lo || r > hi) continue;
                out.value = std::max(out.value, std::abs(f.at(i1, i2, i3)));
                ++hits;
            }
    out.empty = hits == 0;
    return out;
}

DyadicRange dyadic_range(const Grid& g) {
    DyadicRange r;
    r.j_min = static_cast<int>(std::ceil(std::log2(g.spacing())));
    r.j_max = static_cast<int>(std::floor(std::log2(g.box_half_length))) - 1;
    return r;
}

}  // namespace mnls

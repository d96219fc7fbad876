#include "mnls/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace mnls {

cplx weighted_integrate(const ComplexField& f, const std::function<double(Vec3)>& w) {
    const Grid& g = f.grid;
    std::vector<cplx> tmp(g.size());
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const std::int64_t id = g.index(i1, i2, i3);
                tmp[id] = f.v[id] * w(g.point(i1, i2, i3));
            }
    return g.cell_volume() * pairwise_sum(std::span<const cplx>(tmp));
}

double weighted_integrate(const RealField& f, const std::function<double(Vec3)>& w) {
    const Grid& g = f.grid;
    std::vector<double> tmp(g.size());
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const std::int64_t id = g.index(i1, i2, i3);
                tmp[id] = f.v[id] * w(g.point(i1, i2, i3));
            }
    return g.cell_volume() * pairwise_sum(std::span<const double>(tmp));
}

double l2_norm_sq(const ComplexField& f) {
    return f.grid.cell_volume() *
           pairwise_sum_transform(f.v.size(), [&](std::size_t i) { return std::norm(f.v[i]); });
}

double l2_norm_sq(const RealField& f) {
    return f.grid.cell_volume() *
           pairwise_sum_transform(f.v.size(), [&](std::size_t i) { return f.v[i] * f.v[i]; });
}

double linf_norm(const ComplexField& f) {
    double m = 0.0;
    for (const cplx& z : f.v) m = std::max(m, std::abs(z));
    return m;
}

double linf_norm(const RealField& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

double lp_norm_pow(const ComplexField& f, double r) {
    return f.grid.cell_volume() * pairwise_sum_transform(f.v.size(), [&](std::size_t i) {
               return std::pow(std::abs(f.v[i]), r);
           });
}

double l2_distance(const ComplexField& a, const ComplexField& b) {
    return std::sqrt(a.grid.cell_volume() *
                     pairwise_sum_transform(a.v.size(), [&](std::size_t i) {
                         return std::norm(a.v[i] - b.v[i]);
                     }));
}

double inner(const RealField& a, const RealField& b) {
    return a.grid.cell_volume() * pairwise_sum_transform(a.v.size(), [&](std::size_t i) {
               return a.v[i] * b.v[i];
           });
}

namespace {
template <class FieldT, class AbsFn>
double boundary_fraction_impl(const FieldT& f, int cells, AbsFn&& absfn) {
    const Grid& g = f.grid;
    std::vector<double> all(g.size()), edge(g.size(), 0.0);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const std::int64_t id = g.index(i1, i2, i3);
                const double a = absfn(f.v[id]);
                all[id] = a;
                const bool near = i1 < cells || i1 >= g.n - cells || i2 < cells ||
                                  i2 >= g.n - cells || i3 < cells || i3 >= g.n - cells;
                if (near) edge[id] = a;
            }
    const double total = pairwise_sum(std::span<const double>(all));
    if (total <= 0.0) return 0.0;
    return pairwise_sum(std::span<const double>(edge)) / total;
}
}  // namespace

double boundary_mass_fraction(const RealField& f, int cells) {
    return boundary_fraction_impl(f, cells, [](double x) { return std::abs(x); });
}

double boundary_mass_fraction(const ComplexField& f, int cells) {
    return boundary_fraction_impl(f, cells, [](const cplx& z) { return std::abs(z); });
}

}  // namespace mnls

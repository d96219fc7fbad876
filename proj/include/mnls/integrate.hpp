#pragma once

#include <functional>

#include "mnls/field.hpp"
#include "mnls/reduce.hpp"

namespace mnls {

/// cell_volume * deterministic pairwise sum of samples.
inline cplx integrate(const ComplexField& f) {
    return f.grid.cell_volume() * pairwise_sum(std::span<const cplx>(f.v));
}

inline double integrate(const RealField& f) {
    return f.grid.cell_volume() * pairwise_sum(std::span<const double>(f.v));
}

cplx weighted_integrate(const ComplexField& f, const std::function<double(Vec3)>& w);
double weighted_integrate(const RealField& f, const std::function<double(Vec3)>& w);

double l2_norm_sq(const ComplexField& f);
double l2_norm_sq(const RealField& f);
inline double l2_norm(const ComplexField& f) { return std::sqrt(l2_norm_sq(f)); }
inline double l2_norm(const RealField& f) { return std::sqrt(l2_norm_sq(f)); }

double linf_norm(const ComplexField& f);
double linf_norm(const RealField& f);

/// integral of |f|^r
double lp_norm_pow(const ComplexField& f, double r);

double l2_distance(const ComplexField& a, const ComplexField& b);

/// Grid inner product <a|b> = cell_volume * sum a*b of real fields.
double inner(const RealField& a, const RealField& b);

/// Fraction of the integral of |f| carried by samples within `cells` cells of
/// any box face. Used by the boundary-contamination monitors.
double boundary_mass_fraction(const RealField& f, int cells = 2);
double boundary_mass_fraction(const ComplexField& f, int cells = 2);

}  // namespace mnls

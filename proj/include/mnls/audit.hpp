#pragma once

#include <string>
#include <vector>

#include "mnls/field.hpp"
#include "mnls/gauge.hpp"

namespace mnls {

/// sup_x integral of |f(y)| / |x-y| dy (n = 3 Kato norm), realized as
/// riesz_convolve of |f| followed by a grid sup.
double kato_norm(const RealField& f);

/// Kato smallness threshold pi^{n/2} / Gamma(n/2 - 1); equals pi for n = 3.
double kato_threshold(int n = 3);

struct ConditionEntry {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;      // ignored when bounded_requirement
    bool bounded_requirement = false;
    double growth = 0.0;         // outer-annulus growth ratio for bounded checks
    bool pass = true;
    bool approximate = false;    // approximate entries never fail the exit code alone
    std::string caveat;
};

struct ConditionReport {
    double m_param = 1.0;
    double b_param = 0.75;
    std::string header_note;
    std::vector<ConditionEntry> entries;

    const ConditionEntry& entry(const std::string& name) const;
    bool all_strict_pass() const;  // every non-approximate entry passes
    std::string table() const;
};

/// Evaluates every admissibility condition of the gauge potential on the
/// given grid: the trapping/electric composite with parameters M and b, the
/// dyadic curvature sums, the weighted radial norms, the Kato norms and the
/// weak-norm surrogates. Boundedness conditions are judged by the growth of
/// the outermost dyadic contributions (a finite box cannot see the tail).
ConditionReport audit(const GaugePotential& gp, const Grid& g, double m_param, double b_param);

}  // namespace mnls

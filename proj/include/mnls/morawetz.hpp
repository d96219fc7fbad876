#pragma once

#include <array>
#include <string>
#include <vector>

#include "mnls/evolve.hpp"
#include "mnls/field.hpp"
#include "mnls/gauge.hpp"
#include "mnls/stress.hpp"

namespace mnls {

/// The interaction operators X, eta and the trace kernel carry the true
/// Green-function normalization 1/(4 pi) on top of the bare 1/|x-y| kernels;
/// this is what makes the P-decomposition close and P3 reduce to 2 int |u|^4
/// at n = 3.
inline constexpr double kRieszNormalization = 1.0 / (4.0 * M_PI);

/// Smoothed single-center weight a_eps(x) = sqrt(|x|^2 + eps^2) with closed
/// form derivatives; convex, |grad a| <= 1, bilap a < 0.
struct MorawetzWeight {
    double eps = 0.0;

    double a(Vec3 x) const { return std::sqrt(dot(x, x) + eps * eps); }
    Vec3 grad(Vec3 x) const { return (1.0 / a(x)) * x; }
    double hess(int j, int k, Vec3 x) const {
        const double aa = a(x);
        return (j == k ? 1.0 / aa : 0.0) - x[j] * x[k] / (aa * aa * aa);
    }
    double lap(Vec3 x) const {
        const double aa = a(x);
        return (2.0 * dot(x, x) + 3.0 * eps * eps) / (aa * aa * aa);
    }
    double bilap(Vec3 x) const {
        const double aa = a(x);
        return -15.0 * eps * eps * eps * eps / std::pow(aa, 7.0);
    }

    static MorawetzWeight cells(const Grid& g, double n_cells = 4.0) {
        return MorawetzWeight{n_cells * g.spacing()};
    }
};

/// M_a(t) = int grad a . Tj0 dx.
double morawetz_action(const StressTensor& st, const MorawetzWeight& w);
double morawetz_action(const ComplexField& u, const EvolveContext& ctx, const MorawetzWeight& w);

struct VirialReport {
    std::vector<double> integrand;  // per-snapshot spatial integral of the RHS density
    double lhs = 0.0;        // M_a(T) - M_a(0)
    double rhs = 0.0;        // time quadrature of the virial integrand
    double term_hess = 0.0;  // int 2 d_j d_k a Re(D_j u conj D_k u)
    double term_bilap = 0.0; // int -bilap(a)/2 |u|^2
    double term_g = 0.0;     // int mu lap(a) G(|u|^2)
    double term_f = 0.0;     // int 2 d_j a F_{alpha j} T_{alpha 0}
    double mismatch = 0.0;
    double scale = 0.0;      // max(|lhs|, largest |term|)
};

/// Both sides of the generalized virial identity, computed independently:
/// the left from the endpoint actions, the right from snapshot quadrature.
VirialReport virial_check(const Trajectory& traj, const EvolveContext& ctx,
                          const CurvatureField& cf, const MorawetzWeight& w);

/// M(t) = 4 <X rho | p> in the normalized convention.
double interaction_action(const StressTensor& st);

struct PTerms {
    double p1 = 0.0, p2 = 0.0, p3 = 0.0, p4 = 0.0, p5 = 0.0;
    double b_quantity = 0.0;        // B(t), computed through the adjoint route; equals p5/8
    double floored_fraction = 0.0;  // share of cells below the rho floor
    double p2_floor_bound = 0.0;    // bound on the floored cells' P1+P2 contribution
};

PTerms p_terms(const ComplexField& u, const EvolveContext& ctx, const CurvatureField& cf);
PTerms p_terms_from_stress(const StressTensor& st, const EvolveContext& ctx,
                           const CurvatureField& cf);

struct MorawetzReport {
    std::vector<double> times;
    std::vector<double> m_a;
    std::vector<double> m_interaction;
    std::array<std::vector<double>, 5> p;
    std::vector<double> thm1_ratio;  // running ratio int||u||_L4^4 dt / (mass(0) sup_t || |grad|^{1/2} u ||^2)
    VirialReport virial;
    double p3p5_time_integral = 0.0;
    double interaction_gain = 0.0;   // M(T) - M(0)
    bool display_inequality_ok = false;
    double rho_floor_used = 0.0;
    double weight_eps = 0.0;
    double max_floored_fraction = 0.0;
    double max_p2_floor_bound = 0.0;
    double b_bookkeeping_defect = 0.0;  // max |B - P5/8| over snapshots
    bool auditor_strict_pass = false;
    std::string notes;  // proxy and floor annotations
};

/// Full interaction-Morawetz diagnostic over a trajectory: P-term series,
/// actions, the section-4 display inequality int(P3+P5) <= M(T) - M(0), the
/// virial identity and the scattering-norm ratio with the |grad|^{1/2} proxy.
/// Refuses focusing runs.
/// with_p_terms = false skips the convolution-heavy P columns (the virial,
/// actions and the scattering-norm ratio remain).
MorawetzReport morawetz_report(const Trajectory& traj, const EvolveContext& ctx,
                               const GaugePotential& gp, double weight_cells = 4.0,
                               bool with_p_terms = true);

struct SignDemo {
    Vec3 y_plus{}, y_minus{};
    double value_plus = 0.0, value_minus = 0.0;
};

/// Appendix demonstration: the virial F-term integrand changes sign as y
/// moves on a sphere of the given radius around x0 (unit |u|^2 weights).
SignDemo appendix_sign_demo(const GaugePotential& gp, Vec3 p_vec, Vec3 x0,
                            double radius = 1.0);

}  // namespace mnls

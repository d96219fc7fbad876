#pragma once

#include <limits>
#include <vector>

#include "mnls/evolve.hpp"
#include "mnls/field.hpp"

namespace mnls {

/// Exponent pair for L^q_t L^r_x; q may be infinity, r must be finite.
struct NormSpec {
    double q = 4.0;
    double r = 4.0;

    bool q_infinite() const { return std::isinf(q); }
    /// Schroedinger admissibility at n = 3: 2/q + 3/r = 3/2, q >= 2, q != 2.
    bool admissible() const {
        if (q_infinite()) return std::abs(3.0 / r - 1.5) <= 1e-12;
        return std::abs(2.0 / q + 3.0 / r - 1.5) <= 1e-12 && q >= 2.0 && q != 2.0;
    }
};

/// ( sum_k w_k (int |u(t_k)|^r dx)^{q/r} )^{1/q} with composite Simpson
/// weights in t; q = infinity takes the max over snapshots.
double spacetime_norm(const Trajectory& traj, const NormSpec& ns);

/// Projection of the covariant gradient onto the tangent space of the sphere:
/// grad_A u - (x/|x|)((x/|x|) . grad_A u).
VectorField tangential_gradient(const ComplexField& u, const EvolveContext& ctx);

struct SmoothingReport {
    double tangential_term = 0.0;  // iint |grad^tau_A u|^2 / |x|
    double local_term = 0.0;       // sup_R (1/R) iint_{|x|<=R} (|grad_A u|^2 + G)
    double sphere_term = 0.0;      // sup_R (1/R^2) iint_{|x|=R} |u|^2
    double proxy_rhs = 0.0;        // sup_t || |grad|^{1/2} u ||^2 (the (-Delta_A)^{1/4} proxy)
    double ratio_tangential = 0.0, ratio_local = 0.0, ratio_sphere = 0.0;
};

/// The three smoothing functionals over the trajectory, with the sup over R
/// realized on the discrete shell set (a lower bound of the true sup).
/// Requires mu >= 0.
SmoothingReport smoothing_functionals(const Trajectory& traj, const EvolveContext& ctx);

struct StrichartzQuotient {
    double value = 0.0;
    bool admissible = false;
    bool flagged = false;  // inadmissible pair: reported, still computed
};

/// || e^{itH} u0 ||_{L^q L^r} / || u0 ||_{L^2} over [0, T] (mu = 0 run).
StrichartzQuotient strichartz_quotient(const ComplexField& u0, const EvolveContext& ctx,
                                       const NormSpec& ns, double t_final, double stride);

struct CauchyRow {
    double t = 0.0;
    double l2_increment = 0.0;
    double h1_increment = 0.0;  // L2 + grad-L2 proxy of the H1 norm
    double boundary_mass = 0.0;
};

struct CauchyTable {
    std::vector<CauchyRow> rows;
    bool monotone_decay = false;
    double truncated_at = std::numeric_limits<double>::infinity();
};

/// Pull-back Cauchy test: w(t_k) = linear backward propagation of u(t_k) to
/// t = 0; rows list the increments |w(t_{k+1}) - w(t_k)|. The table truncates
/// once the boundary mass passes 1% (periodic wrap invalidates dispersion).
CauchyTable scattering_monitor(const Trajectory& traj, const EvolveContext& ctx);

}  // namespace mnls

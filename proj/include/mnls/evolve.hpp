#pragma once

#include <string>
#include <vector>

#include "mnls/field.hpp"
#include "mnls/gauge.hpp"
#include "mnls/nonlinearity.hpp"

namespace mnls {

/// Everything a run needs sampled once: the grid, the Coulomb-gauge
/// potential on the grid and the nonlinearity.
struct EvolveContext {
    Grid grid;
    NonlinearitySpec nl;
    RealVectorField a;
    RealField a0;
    RealField a_sq;
    RealField div_a;  // zero for Coulomb potentials; kept so the full
                      // Delta_A = lap + 2iA.grad + i(div A) - |A|^2 is covariant
    bool gauge_zero = true;

    static EvolveContext make(const Grid& g, const GaugePotential& gp,
                              const NonlinearitySpec& nl);
    EvolveContext linear() const {  // same potential, nonlinearity off
        EvolveContext c = *this;
        c.nl.mu = 0.0;
        return c;
    }
};

/// du/dt = i(lap u + 2i A.grad u - |A|^2 u - A0 u - mu g(|u|^2) u); spectral
/// derivatives, 2/3-rule dealiasing on the pointwise products.
ComplexField rhs(const ComplexField& u, const EvolveContext& ctx);

/// rk4 refuses to run above c_cfl (dx)^2; "auto" dt is a quarter of that.
double cfl_bound(const Grid& g, double c_cfl = 0.2);
double default_dt(const Grid& g);

ComplexField step_rk4(const ComplexField& u, double dt, const EvolveContext& ctx);

/// Exact flow of du/dt = -i mu g(|u|^2) u: a unimodular phase, |u| invariant.
ComplexField nonlinear_phase(const ComplexField& u, double dt, const NonlinearitySpec& nl);

/// Strang splitting: exact nonlinear phase half-steps (|u| invariant) around
/// an rk4 substep of the linear magnetic part.
ComplexField step_strang(const ComplexField& u, double dt, const EvolveContext& ctx);

/// mu = 0 evolution by time t (negative t propagates backward). A zero
/// potential takes the exact spectral path.
ComplexField linear_propagate(const ComplexField& u0, double t, const EvolveContext& ctx);

struct Trajectory {
    double dt = 0.0;
    double stride = 0.0;
    std::string scheme;
    std::vector<double> times;
    std::vector<ComplexField> snaps;
    bool aborted = false;       // first non-finite sample stops the run; the
    std::string abort_reason;   // stored prefix stays finite

    int count() const { return static_cast<int>(snaps.size()); }
    const ComplexField& at(int k) const { return snaps[k]; }
};

/// Integrates to time T storing a snapshot every `stride`; dt_request == 0
/// picks the auto step. dt is rounded down so snapshots land on step
/// boundaries exactly. Stops at the first non-finite sample with the finite
/// prefix kept, so callers can flush partial diagnostics.
Trajectory run_trajectory(const ComplexField& u0, double T, double stride,
                          const std::string& scheme, const EvolveContext& ctx,
                          double dt_request = 0.0);

struct PicardConfig {
    double horizon = 0.05;
    int max_iters = 8;
    double tol = 1e-12;
    int quad_intervals = 8;  // Simpson nodes in the Duhamel integral
    double c_const = 1.0;    // the unquantified constant C, user knob
};

struct PicardResult {
    std::vector<double> diffs;  // sup-over-nodes L2 difference per iteration
    ComplexField final_state;   // converged iterate at the horizon
    bool contractive = true;
    // reported proxies: Q = ||u0||_{H1}, delta = C Q, a = 2 delta, b = 4 C Q,
    // and the horizon bound T^{1/4} <= 1/(2 C a b)
    double q = 0.0, delta = 0.0, a_param = 0.0, b_param = 0.0, t_bound = 0.0;
};

/// Duhamel/Picard iteration on a coarse grid (<= 16^3): an independent
/// cross-check of the steppers, not a production path.
PicardResult picard_iterate(const ComplexField& u0, const PicardConfig& pc,
                            const EvolveContext& ctx);

}  // namespace mnls

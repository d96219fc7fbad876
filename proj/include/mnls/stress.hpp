#pragma once

#include "mnls/evolve.hpp"
#include "mnls/field.hpp"
#include "mnls/gauge.hpp"

namespace mnls {

/// Pseudo-stress-energy snapshot: T00 = |u|^2/2 (rho), Tj0 = Im(conj(u) D_j u)
/// (momentum density p, also exposed as T0j), Tjk = sigma_jk - (1/2) delta_jk
/// lap|u|^2 + mu delta_jk G(|u|^2) with sigma_jk = 2 Re(D_j u conj(D_k u)).
/// grad_rho stores the pointwise product-rule derivative Re(conj(u) D_j u),
/// which makes the sigma identity exact wherever rho is floored away from 0.
struct StressTensor {
    Grid grid;
    RealField t00;
    RealVectorField tj0;
    SymTensorField tjk;
    SymTensorField sigma;
    VectorField du;           // covariant derivative D_j u
    RealVectorField grad_rho;
};

StressTensor stress_tensor(const ComplexField& u, const EvolveContext& ctx);

double mass(const ComplexField& u);
double energy(const ComplexField& u, const EvolveContext& ctx);

/// rho floor used wherever 1/rho appears: 1e-12 * max(rho).
double rho_floor(const RealField& t00);

struct ScalarResidual {
    RealField field;
    double l2 = 0.0;
};
struct VectorResidual {
    RealVectorField field;
    double l2 = 0.0;
};

/// d/dt T00 + div Tj0 at interior snapshot k (centered differences in time,
/// spectral divergence in space).
ScalarResidual mass_charge_residual(const Trajectory& traj, int k, const EvolveContext& ctx);

/// d/dt Tj0 + d_k Tjk - 2 F_{0j} T00 - 2 F_{kj} Tk0 at interior snapshot k.
VectorResidual momentum_balance_residual(const Trajectory& traj, int k,
                                         const EvolveContext& ctx, const CurvatureField& cf);

}  // namespace mnls

#include "mnls/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "mnls/integrate.hpp"
#include "mnls/quadrature.hpp"
#include "mnls/radial.hpp"
#include "mnls/spectral.hpp"
#include "mnls/stress.hpp"

namespace mnls {

double spacetime_norm(const Trajectory& traj, const NormSpec& ns) {
    if (std::isinf(ns.r))
        throw std::invalid_argument("spacetime_norm: r must be finite (grid sup unsupported)");
    const int n = traj.count();
    std::vector<double> lr(n);
    for (int k = 0; k < n; ++k) lr[k] = lp_norm_pow(traj.at(k), ns.r);  // int |u|^r

    if (ns.q_infinite()) {
        double best = 0.0;
        for (double v : lr) best = std::max(best, std::pow(v, 1.0 / ns.r));
        return best;
    }
    const std::vector<double> w = composite_weights(n - 1, traj.stride);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += w[k] * std::pow(lr[k], ns.q / ns.r);
    return std::pow(acc, 1.0 / ns.q);
}

VectorField tangential_gradient(const ComplexField& u, const EvolveContext& ctx) {
    const Grid& g = u.grid;
    VectorField du = spectral_gradient(u);
    for (int j = 0; j < 3; ++j)
        for (std::int64_t i = 0; i < g.size(); ++i)
            du[j].v[i] += cplx{0.0, ctx.a[j].v[i]} * u.v[i];
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const std::int64_t id = g.index(i1, i2, i3);
                const Vec3 x = g.point(i1, i2, i3);
                const double r = norm(x);
                const cplx radial =
                    (x.x * du[0].v[id] + x.y * du[1].v[id] + x.z * du[2].v[id]) / r;
                for (int j = 0; j < 3; ++j) du[j].v[id] -= x[j] / r * radial;
            }
    return du;
}

SmoothingReport smoothing_functionals(const Trajectory& traj, const EvolveContext& ctx) {
    if (ctx.nl.mu < 0.0)
        throw std::invalid_argument("smoothing_functionals: defocusing (mu >= 0) required");
    const Grid& g = ctx.grid;
    const int n = traj.count();
    const std::vector<double> wts = composite_weights(n - 1, traj.stride);

    SmoothingReport rep;
    std::vector<double> local_cum, sphere_cum;  // per shell radius, time-integrated
    int shells = 0;

    for (int k = 0; k < n; ++k) {
        const ComplexField& u = traj.at(k);
        VectorField tau = tangential_gradient(u, ctx);
        RealField tang_dens(g), local_dens(g);
        for (int i3 = 0; i3 < g.n; ++i3)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    const std::int64_t id = g.index(i1, i2, i3);
                    const double r = norm(g.point(i1, i2, i3));
                    const double tau_sq = std::norm(tau[0].v[id]) + std::norm(tau[1].v[id]) +
                                          std::norm(tau[2].v[id]);
                    tang_dens.v[id] = tau_sq / r;
                }
        rep.tangential_term += wts[k] * integrate(tang_dens);

        StressTensor st = stress_tensor(u, ctx);
        for (std::int64_t i = 0; i < g.size(); ++i) {
            const double du_sq = std::norm(st.du[0].v[i]) + std::norm(st.du[1].v[i]) +
                                 std::norm(st.du[2].v[i]);
            local_dens.v[i] = du_sq + ctx.nl.G(2.0 * st.t00.v[i]);
        }
        RadialProfile lp = radial_profile(local_dens);
        RadialProfile sp = radial_profile(abs2_field(u));
        if (k == 0) {
            shells = lp.shells();
            local_cum.assign(shells, 0.0);
            sphere_cum.assign(shells, 0.0);
        }
        for (int s = 0; s < shells; ++s) {
            local_cum[s] += wts[k] * lp.integral[s].real();
            // surface integral approximated as shell integral / dr
            sphere_cum[s] += wts[k] * sp.integral[s].real() / sp.dr;
        }
    }

    // sup over the discrete shell radii
    double cum = 0.0;
    for (int s = 0; s < shells; ++s) {
        cum += local_cum[s];
        const double radius = (s + 1) * 2.0 * g.spacing();
        rep.local_term = std::max(rep.local_term, cum / radius);
        const double r_mid = (s + 0.5) * 2.0 * g.spacing();
        rep.sphere_term = std::max(rep.sphere_term, sphere_cum[s] / (r_mid * r_mid));
    }

    for (int k = 0; k < n; ++k)
        rep.proxy_rhs = std::max(
            rep.proxy_rhs, l2_norm_sq(fractional_gradient_power(traj.at(k), 0.5)));
    if (rep.proxy_rhs > 0.0) {
        rep.ratio_tangential = rep.tangential_term / rep.proxy_rhs;
        rep.ratio_local = rep.local_term / rep.proxy_rhs;
        rep.ratio_sphere = rep.sphere_term / rep.proxy_rhs;
    }
    return rep;
}

StrichartzQuotient strichartz_quotient(const ComplexField& u0, const EvolveContext& ctx,
                                       const NormSpec& ns, double t_final, double stride) {
    StrichartzQuotient out;
    out.admissible = ns.admissible();
    out.flagged = !out.admissible;
    Trajectory traj;
    {
        EvolveContext lin = ctx.linear();
        const int snaps = static_cast<int>(std::round(t_final / stride));
        traj.stride = stride;
        traj.scheme = "linear";
        ComplexField u = u0;
        traj.times.push_back(0.0);
        traj.snaps.push_back(u);
        for (int k = 1; k <= snaps; ++k) {
            u = linear_propagate(u, stride, lin);
            traj.times.push_back(k * stride);
            traj.snaps.push_back(u);
        }
    }
    out.value = spacetime_norm(traj, ns) / l2_norm(u0);
    return out;
}

CauchyTable scattering_monitor(const Trajectory& traj, const EvolveContext& ctx) {
    const int n = traj.count();
    CauchyTable table;

    std::vector<ComplexField> pulled;
    std::vector<double> bmass;
    for (int k = 0; k < n; ++k) {
        const double frac = boundary_mass_fraction(traj.at(k), 2);
        if (frac > 0.01) {
            table.truncated_at = traj.times[k];
            break;
        }
        pulled.push_back(linear_propagate(traj.at(k), -traj.times[k], ctx));
        bmass.push_back(frac);
    }

    for (std::size_t k = 0; k + 1 < pulled.size(); ++k) {
        CauchyRow row;
        row.t = traj.times[k + 1];
        ComplexField diff(ctx.grid);
        for (std::int64_t i = 0; i < ctx.grid.size(); ++i)
            diff.v[i] = pulled[k + 1].v[i] - pulled[k].v[i];
        row.l2_increment = l2_norm(diff);
        VectorField dd = spectral_gradient(diff);
        double grad_sq = 0.0;
        for (int j = 0; j < 3; ++j) grad_sq += l2_norm_sq(dd[j]);
        row.h1_increment = row.l2_increment + std::sqrt(grad_sq);
        row.boundary_mass = bmass[k + 1];
        table.rows.push_back(row);
    }

    // non-increasing L2 increments after their peak
    table.monotone_decay = true;
    std::size_t peak = 0;
    for (std::size_t k = 1; k < table.rows.size(); ++k)
        if (table.rows[k].l2_increment > table.rows[peak].l2_increment) peak = k;
    for (std::size_t k = peak; k + 1 < table.rows.size(); ++k)
        if (table.rows[k + 1].l2_increment >
            table.rows[k].l2_increment * (1.0 + 1e-9))
            table.monotone_decay = false;
    return table;
}

}  // namespace mnls

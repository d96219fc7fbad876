#include "mnls/evolve.hpp"

#include <cmath>
#include <stdexcept>

#include "mnls/fft.hpp"
#include "mnls/integrate.hpp"
#include "mnls/quadrature.hpp"
#include "mnls/spectral.hpp"

namespace mnls {

EvolveContext EvolveContext::make(const Grid& g, const GaugePotential& gp,
                                  const NonlinearitySpec& nl) {
    EvolveContext ctx;
    ctx.grid = g;
    ctx.nl = nl;
    ctx.a = gp.sample_a(g);
    ctx.a0 = gp.sample_a0(g);
    ctx.a_sq = RealField(g);
    for (std::int64_t i = 0; i < g.size(); ++i)
        ctx.a_sq.v[i] = ctx.a[0].v[i] * ctx.a[0].v[i] + ctx.a[1].v[i] * ctx.a[1].v[i] +
                        ctx.a[2].v[i] * ctx.a[2].v[i];
    // analytic families are divergence-free in closed form
    ctx.div_a = gp.analytic() ? RealField(g) : spectral_divergence(ctx.a);
    ctx.gauge_zero = gp.is_zero();
    return ctx;
}

namespace {

inline double deriv_wavenumber(const Grid& g, int i) {
    const int m = g.mode(i);
    if (m == -g.n / 2) return 0.0;
    return g.k_fundamental() * m;
}

// lap u and grad u from one forward transform
void lap_and_grad(const ComplexField& u, ComplexField& lap, VectorField& grad) {
    const Grid& g = u.grid;
    ComplexField uh = fft_forward(u);
    ComplexField work(g);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const double k1 = g.wavenumber(i1), k2 = g.wavenumber(i2), k3 = g.wavenumber(i3);
                work.at(i1, i2, i3) = -(k1 * k1 + k2 * k2 + k3 * k3) * uh.at(i1, i2, i3);
            }
    lap = fft_inverse(work);
    for (int axis = 0; axis < 3; ++axis) {
        for (int i3 = 0; i3 < g.n; ++i3)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    const int i = axis == 0 ? i1 : (axis == 1 ? i2 : i3);
                    work.at(i1, i2, i3) =
                        cplx{0.0, deriv_wavenumber(g, i)} * uh.at(i1, i2, i3);
                }
        grad[axis] = fft_inverse(work);
    }
}

}  // namespace

ComplexField rhs(const ComplexField& u, const EvolveContext& ctx) {
    const Grid& g = u.grid;
    ComplexField lap(g);
    VectorField grad(g);
    lap_and_grad(u, lap, grad);

    const bool linear_free = ctx.gauge_zero && ctx.nl.mu == 0.0;
    if (linear_free) {
        ComplexField out(g);
        for (std::int64_t i = 0; i < g.size(); ++i) out.v[i] = cplx{0.0, 1.0} * lap.v[i];
        return out;
    }

    ComplexField prod(g);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < g.size(); ++i) {
        const cplx adotgrad =
            ctx.a[0].v[i] * grad[0].v[i] + ctx.a[1].v[i] * grad[1].v[i] +
            ctx.a[2].v[i] * grad[2].v[i];
        cplx acc = cplx{0.0, 2.0} * adotgrad +
                   cplx{0.0, ctx.div_a.v[i]} * u.v[i] -
                   (ctx.a_sq.v[i] + ctx.a0.v[i]) * u.v[i];
        if (ctx.nl.mu != 0.0) acc -= ctx.nl.mu * ctx.nl.g(std::norm(u.v[i])) * u.v[i];
        prod.v[i] = acc;
    }
    prod = dealias_two_thirds(prod);

    ComplexField out(g);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < g.size(); ++i)
        out.v[i] = cplx{0.0, 1.0} * (lap.v[i] + prod.v[i]);
    return out;
}

double cfl_bound(const Grid& g, double c_cfl) {
    const double h = g.spacing();
    return c_cfl * h * h;
}

double default_dt(const Grid& g) { return 0.25 * cfl_bound(g); }

ComplexField step_rk4(const ComplexField& u, double dt, const EvolveContext& ctx) {
    const Grid& g = u.grid;
    ComplexField k1 = rhs(u, ctx);
    ComplexField stage(g);
    for (std::int64_t i = 0; i < g.size(); ++i) stage.v[i] = u.v[i] + 0.5 * dt * k1.v[i];
    ComplexField k2 = rhs(stage, ctx);
    for (std::int64_t i = 0; i < g.size(); ++i) stage.v[i] = u.v[i] + 0.5 * dt * k2.v[i];
    ComplexField k3 = rhs(stage, ctx);
    for (std::int64_t i = 0; i < g.size(); ++i) stage.v[i] = u.v[i] + dt * k3.v[i];
    ComplexField k4 = rhs(stage, ctx);
    ComplexField out(g);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < g.size(); ++i)
        out.v[i] = u.v[i] + dt / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
    return out;
}

ComplexField nonlinear_phase(const ComplexField& u, double dt, const NonlinearitySpec& nl) {
    ComplexField w = u;
    if (nl.mu == 0.0) return w;
    for (auto& z : w.v) {
        const double theta = -nl.mu * nl.g(std::norm(z)) * dt;
        z *= cplx{std::cos(theta), std::sin(theta)};
    }
    return w;
}

ComplexField step_strang(const ComplexField& u, double dt, const EvolveContext& ctx) {
    ComplexField w = nonlinear_phase(u, 0.5 * dt, ctx.nl);
    w = step_rk4(w, dt, ctx.linear());
    return nonlinear_phase(w, 0.5 * dt, ctx.nl);
}

ComplexField linear_propagate(const ComplexField& u0, double t, const EvolveContext& ctx) {
    const Grid& g = u0.grid;
    if (t == 0.0) return u0;
    if (ctx.gauge_zero) {
        // exact spectral flow exp(i t lap)
        ComplexField uh = fft_forward(u0);
        for (int i3 = 0; i3 < g.n; ++i3)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    const double k1 = g.wavenumber(i1), k2 = g.wavenumber(i2),
                                 k3 = g.wavenumber(i3);
                    const double theta = -t * (k1 * k1 + k2 * k2 + k3 * k3);
                    uh.at(i1, i2, i3) *= cplx{std::cos(theta), std::sin(theta)};
                }
        return fft_inverse(uh);
    }
    const EvolveContext lin = ctx.linear();
    const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / default_dt(g))));
    const double dt = t / steps;
    ComplexField u = u0;
    for (int s = 0; s < steps; ++s) u = step_rk4(u, dt, lin);
    return u;
}

Trajectory run_trajectory(const ComplexField& u0, double T, double stride,
                          const std::string& scheme, const EvolveContext& ctx,
                          double dt_request) {
    const Grid& g = u0.grid;
    if (!(T > 0.0) || !(stride > 0.0) || stride > T + 1e-12)
        throw std::invalid_argument("run_trajectory: need 0 < stride <= T");
    const bool strang = scheme == "strang";
    if (!strang && scheme != "rk4")
        throw std::invalid_argument("run_trajectory: unknown scheme " + scheme);

    const double bound = cfl_bound(g);
    double dt_cand = dt_request > 0.0 ? dt_request : default_dt(g);
    if (dt_cand > bound * (1.0 + 1e-12))
        throw std::invalid_argument("run_trajectory: dt above the rk4 stability bound 0.2 dx^2");
    const int sps = std::max(1, static_cast<int>(std::ceil(stride / dt_cand - 1e-9)));
    const double dt = stride / sps;

    Trajectory traj;
    traj.dt = dt;
    traj.stride = stride;
    traj.scheme = strang ? "strang" : "rk4";

    ComplexField u = dealias_two_thirds(u0);
    const int snaps = static_cast<int>(std::round(T / stride));
    traj.times.push_back(0.0);
    traj.snaps.push_back(u);
    for (int s = 1; s <= snaps; ++s) {
        for (int q = 0; q < sps; ++q)
            u = strang ? step_strang(u, dt, ctx) : step_rk4(u, dt, ctx);
        if (!u.finite()) {
            traj.aborted = true;
            traj.abort_reason =
                "non-finite sample at t = " + std::to_string(s * stride);
            break;
        }
        traj.times.push_back(s * stride);
        traj.snaps.push_back(u);
    }
    return traj;
}

PicardResult picard_iterate(const ComplexField& u0, const PicardConfig& pc,
                            const EvolveContext& ctx) {
    const Grid& g = u0.grid;
    if (g.n > 16)
        throw std::invalid_argument("picard_iterate: oracle restricted to grids <= 16^3");
    if (pc.quad_intervals < 2 || pc.quad_intervals % 2 != 0)
        throw std::invalid_argument("picard_iterate: quad_intervals must be even and >= 2");

    const int m = pc.quad_intervals;
    const double hs = pc.horizon / m;

    PicardResult res;
    {
        ComplexField grad_sq(g);
        VectorField du = spectral_gradient(u0);
        double gnorm = 0.0;
        for (int j = 0; j < 3; ++j) gnorm += l2_norm_sq(du[j]);
        res.q = l2_norm(u0) + std::sqrt(gnorm);
        res.delta = pc.c_const * res.q;
        res.a_param = 2.0 * res.delta;
        res.b_param = 4.0 * pc.c_const * res.q;
        const double tq = 1.0 / (2.0 * pc.c_const * res.a_param * res.b_param);
        res.t_bound = tq * tq * tq * tq;
    }

    // u^0: linear flow at the quadrature nodes
    std::vector<ComplexField> prev(m + 1);
    prev[0] = dealias_two_thirds(u0);
    for (int i = 1; i <= m; ++i) prev[i] = linear_propagate(prev[i - 1], hs, ctx);
    const std::vector<ComplexField> lin = prev;

    auto nonlinear_term = [&](const ComplexField& u) {
        ComplexField n(g);
        for (std::int64_t i = 0; i < g.size(); ++i)
            n.v[i] = ctx.nl.g(std::norm(u.v[i])) * u.v[i];
        return dealias_two_thirds(n);
    };

    for (int iter = 0; iter < pc.max_iters; ++iter) {
        std::vector<ComplexField> next(m + 1);
        next[0] = prev[0];
        if (ctx.nl.mu == 0.0) {
            next = lin;
        } else {
            // propagated nonlinear terms: prop[j] = e^{-i(t_i - s_j)H} N(u_prev(s_j)),
            // advanced incrementally in i
            std::vector<ComplexField> prop(m + 1);
            for (int j = 0; j <= m; ++j) prop[j] = nonlinear_term(prev[j]);
            for (int i = 1; i <= m; ++i) {
                for (int j = 0; j < i; ++j) prop[j] = linear_propagate(prop[j], hs, ctx);
                const std::vector<double> w = composite_weights(i, hs);
                ComplexField duh(g);
                for (int j = 0; j <= i; ++j) {
                    if (w[j] == 0.0) continue;
                    for (std::int64_t q = 0; q < g.size(); ++q)
                        duh.v[q] += w[j] * prop[j].v[q];
                }
                next[i] = lin[i];
                const cplx imu{0.0, -ctx.nl.mu};
                for (std::int64_t q = 0; q < g.size(); ++q) next[i].v[q] += imu * duh.v[q];
            }
        }

        double diff = 0.0;
        for (int i = 0; i <= m; ++i) diff = std::max(diff, l2_distance(next[i], prev[i]));
        res.diffs.push_back(diff);
        prev = std::move(next);
        if (diff < pc.tol) break;
        if (res.diffs.size() >= 3) {
            const std::size_t k = res.diffs.size();
            if (res.diffs[k - 1] >= res.diffs[k - 2] && res.diffs[k - 2] >= res.diffs[k - 3]) {
                res.contractive = false;  // horizon too large for contraction
                break;
            }
        }
    }
    res.final_state = prev[m];
    return res;
}

}  // namespace mnls

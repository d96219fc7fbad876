#include <doctest.h>

#include <cmath>

#include "mnls/evolve.hpp"
#include "mnls/integrate.hpp"
#include "mnls/spectral.hpp"
#include "mnls/states.hpp"
#include "mnls/stress.hpp"

using namespace mnls;

TEST_CASE("stress tensor of a constant state") {
    Grid g(16, 2.0);
    const cplx c{0.6, -0.3};
    ComplexField u(g);
    for (auto& z : u.v) z = c;
    NonlinearitySpec nl{1.0, 1.0};
    EvolveContext ctx = EvolveContext::make(g, make_potential("zero", 0.0, 0.0), nl);
    StressTensor st = stress_tensor(u, ctx);
    const double r2 = std::norm(c);
    for (std::int64_t i = 0; i < g.size(); ++i) {
        CHECK(st.t00.v[i] == doctest::Approx(0.5 * r2).epsilon(1e-14));
        for (int j = 0; j < 3; ++j) CHECK(std::abs(st.tj0[j].v[i]) < 1e-13);
        for (int j = 0; j < 3; ++j)
            for (int k = j; k < 3; ++k) {
                CHECK(std::abs(st.sigma(j, k).v[i]) < 1e-12);
                const double want = (j == k) ? nl.mu * nl.G(r2) : 0.0;
                CHECK(st.tjk(j, k).v[i] == doctest::Approx(want).epsilon(1e-10));
            }
    }
}

TEST_CASE("plane wave carries momentum k |u|^2") {
    Grid g(16, 2.0);
    const Vec3 mode{1.0, -2.0, 3.0};
    ComplexField u = plane_wave_state(g, mode);
    EvolveContext ctx = EvolveContext::make(g, make_potential("zero", 0.0, 0.0),
                                            NonlinearitySpec{0.0, 1.0});
    StressTensor st = stress_tensor(u, ctx);
    const double k0 = g.k_fundamental();
    for (int j = 0; j < 3; ++j) {
        const double want = k0 * mode[j];
        for (std::int64_t i = 0; i < g.size(); ++i)
            CHECK(st.tj0[j].v[i] == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("T00 >= 0 and sigma trace is 2 |D u|^2") {
    Grid g(16, 3.0);
    GaugePotential gp = make_potential("smooth_decay", 0.4, 0.5);
    EvolveContext ctx = EvolveContext::make(g, gp, NonlinearitySpec{1.0, 1.0});
    ComplexField u = random_smooth_state(g, 5, 1.0, 0.0, 3);
    StressTensor st = stress_tensor(u, ctx);
    bool t00_nonneg = true, trace_nonneg = true, offdiag_match = true;
    double worst_trace = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        t00_nonneg = t00_nonneg && st.t00.v[i] >= 0.0;
        const double trace = st.sigma(0, 0).v[i] + st.sigma(1, 1).v[i] + st.sigma(2, 2).v[i];
        const double du2 = std::norm(st.du[0].v[i]) + std::norm(st.du[1].v[i]) +
                           std::norm(st.du[2].v[i]);
        worst_trace = std::max(worst_trace,
                               std::abs(trace - 2.0 * du2) / std::max(2.0 * du2, 1e-300));
        trace_nonneg = trace_nonneg && trace >= 0.0;
        // Tjk - sigma_jk is diagonal
        for (int j = 0; j < 3; ++j)
            for (int k = j + 1; k < 3; ++k)
                offdiag_match = offdiag_match && st.tjk(j, k).v[i] == st.sigma(j, k).v[i];
    }
    CHECK(t00_nonneg);
    CHECK(trace_nonneg);
    CHECK(offdiag_match);
    CHECK(worst_trace < 1e-12);
}

TEST_CASE("sigma identity sigma_jk = (p_j p_k + d_j rho d_k rho)/rho") {
    Grid g(16, 3.0);
    GaugePotential gp = make_potential("smooth_decay", 0.4, 0.5);
    EvolveContext ctx = EvolveContext::make(g, gp, NonlinearitySpec{1.0, 1.0});
    ComplexField u = random_smooth_state(g, 8, 1.0, 0.0, 3);
    StressTensor st = stress_tensor(u, ctx);
    const double floor = rho_floor(st.t00);
    double worst = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        if (st.t00.v[i] < floor) continue;
        for (int j = 0; j < 3; ++j)
            for (int k = j; k < 3; ++k) {
                const double want = (st.tj0[j].v[i] * st.tj0[k].v[i] +
                                     st.grad_rho[j].v[i] * st.grad_rho[k].v[i]) /
                                    st.t00.v[i];
                const double got = st.sigma(j, k).v[i];
                worst = std::max(worst, std::abs(got - want) /
                                            (std::max(1e-300, std::abs(want)) + 1e-5));
            }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("stress tensor gauge covariance") {
    // 1e-12 face decay needs L/w >= 7.4
    Grid g(64, 6.0);
    GaugePotential gp = make_potential("smooth_decay", 0.3, 0.5);
    EvolveContext ctx = EvolveContext::make(g, gp, NonlinearitySpec{1.0, 1.0});
    ComplexField u = gaussian_state(g, 0.8, 0.8);

    auto phi = [](Vec3 x) { return 0.15 * std::exp(-dot(x, x) / 4.0); };
    RealVectorField a2(g);
    ComplexField u2(g);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const Vec3 x = g.point(i1, i2, i3);
                const std::int64_t id = g.index(i1, i2, i3);
                const Vec3 gphi = -0.5 * phi(x) * x;
                for (int j = 0; j < 3; ++j) a2[j].v[id] = ctx.a[j].v[id] + gphi[j];
                const double ph = phi(x);
                u2.v[id] = u.v[id] * cplx{std::cos(ph), -std::sin(ph)};
            }
    GaugePotential gp2;
    gp2.family = GaugeFamily::sampled;
    gp2.a_samples = a2;
    gp2.a0_samples = RealField(g);
    EvolveContext ctx2 = EvolveContext::make(g, gp2, ctx.nl);

    StressTensor s1 = stress_tensor(u, ctx);
    StressTensor s2 = stress_tensor(u2, ctx2);
    double scale = linf_norm(s1.sigma(0, 0));
    double worst_t00 = 0.0, worst_tj0 = 0.0, worst_tjk = 0.0;
    for (std::int64_t i = 0; i < g.size(); ++i) {
        worst_t00 = std::max(worst_t00, std::abs(s2.t00.v[i] - s1.t00.v[i]));
        for (int j = 0; j < 3; ++j)
            worst_tj0 = std::max(worst_tj0, std::abs(s2.tj0[j].v[i] - s1.tj0[j].v[i]));
        for (int j = 0; j < 3; ++j)
            for (int k = j; k < 3; ++k)
                worst_tjk = std::max(worst_tjk,
                                     std::abs(s2.tjk(j, k).v[i] - s1.tjk(j, k).v[i]));
    }
    CHECK(worst_t00 <= 1e-12 * scale);
    CHECK(worst_tj0 <= 1e-10 * scale);
    CHECK(worst_tjk <= 1e-10 * scale);
}

TEST_CASE("covariant product identities (p1) and (p2)") {
    Grid g(64, 6.0);
    GaugePotential gp = make_potential("smooth_decay", 0.3, 0.5);
    EvolveContext ctx = EvolveContext::make(g, gp, NonlinearitySpec{0.0, 1.0});
    ComplexField u = random_smooth_state(g, 41, 0.8, 0.8, 2);
    ComplexField v = random_smooth_state(g, 42, 0.8, 0.8, 2);

    auto covariant = [&](const ComplexField& f) {
        VectorField df = spectral_gradient(f);
        for (int j = 0; j < 3; ++j)
            for (std::int64_t i = 0; i < g.size(); ++i)
                df[j].v[i] += cplx{0.0, ctx.a[j].v[i]} * f.v[i];
        return df;
    };
    VectorField du = covariant(u), dv = covariant(v);

    SUBCASE("(p1): d_j(u conj(v)) = D_j u conj(v) + u conj(D_j v)") {
        ComplexField prod(g);
        for (std::int64_t i = 0; i < g.size(); ++i)
            prod.v[i] = u.v[i] * std::conj(v.v[i]);
        VectorField dprod = spectral_gradient(prod);
        double scale = 0.0, worst = 0.0;
        for (int j = 0; j < 3; ++j) scale = std::max(scale, linf_norm(dprod[j]));
        for (int j = 0; j < 3; ++j)
            for (std::int64_t i = 0; i < g.size(); ++i) {
                const cplx want = du[j].v[i] * std::conj(v.v[i]) +
                                  u.v[i] * std::conj(dv[j].v[i]);
                worst = std::max(worst, std::abs(dprod[j].v[i] - want));
            }
        CHECK(worst <= 1e-10 * scale);
    }
    SUBCASE("(p2): commutator of covariant derivatives is i F_jk") {
        // band-limited sampled potential: every A-product stays inside the
        // grid band, so only the A-terms contribute, at machine precision
        RealVectorField araw(g);
        for (int j = 0; j < 3; ++j) araw[j] = real_part(random_band_limited(g, 60 + j, 2));
        GaugePotential gpb = coulomb_project(araw, RealField(g));
        EvolveContext ctxb = EvolveContext::make(g, gpb, NonlinearitySpec{0.0, 1.0});
        ComplexField ub = random_band_limited(g, 63, 2);
        CurvatureField cf = curvature(gpb, g);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (j == k) continue;
                // D_j D_k u - D_k D_j u
                ComplexField djk(g), dkj(g);
                {
                    // build D_k u then D_j of it
                    ComplexField dk = spectral_derivative(ub, k);
                    for (std::int64_t i = 0; i < g.size(); ++i)
                        dk.v[i] += cplx{0.0, ctxb.a[k].v[i]} * ub.v[i];
                    djk = spectral_derivative(dk, j);
                    for (std::int64_t i = 0; i < g.size(); ++i)
                        djk.v[i] += cplx{0.0, ctxb.a[j].v[i]} * dk.v[i];
                    ComplexField dj = spectral_derivative(ub, j);
                    for (std::int64_t i = 0; i < g.size(); ++i)
                        dj.v[i] += cplx{0.0, ctxb.a[j].v[i]} * ub.v[i];
                    dkj = spectral_derivative(dj, k);
                    for (std::int64_t i = 0; i < g.size(); ++i)
                        dkj.v[i] += cplx{0.0, ctxb.a[k].v[i]} * dj.v[i];
                }
                double scale = linf_norm(ub);
                double fmax = linf_norm(cf.da_magnitude);
                double worst = 0.0;
                for (std::int64_t i = 0; i < g.size(); ++i) {
                    const cplx want = cplx{0.0, cf.f(j, k, i)} * ub.v[i];
                    worst = std::max(worst, std::abs((djk.v[i] - dkj.v[i]) - want));
                }
                CHECK(worst <= 1e-8 * std::max(1.0, fmax) * scale);
            }
    }
}

TEST_CASE("balance-law residuals") {
    SUBCASE("zero state has zero residual") {
        Grid g(16, 3.0);
        EvolveContext ctx = EvolveContext::make(g, make_potential("zero", 0.0, 0.0),
                                                NonlinearitySpec{1.0, 1.0});
        Trajectory traj;
        traj.stride = 0.1;
        traj.times = {0.0, 0.1, 0.2};
        traj.snaps = {ComplexField(g), ComplexField(g), ComplexField(g)};
        CurvatureField cf = curvature(make_potential("zero", 0.0, 0.0), g);
        CHECK(mass_charge_residual(traj, 1, ctx).l2 == 0.0);
        CHECK(momentum_balance_residual(traj, 1, ctx, cf).l2 == 0.0);
        CHECK_THROWS(mass_charge_residual(traj, 0, ctx));
        CHECK_THROWS(mass_charge_residual(traj, 2, ctx));
    }
    SUBCASE("constant-modulus state: residual at solver-error level") {
        Grid g(16, 3.0);
        EvolveContext ctx = EvolveContext::make(g, make_potential("zero", 0.0, 0.0),
                                                NonlinearitySpec{1.0, 1.0});
        ComplexField u0(g);
        for (auto& z : u0.v) z = 0.5;
        Trajectory traj = run_trajectory(u0, 0.2, 0.05, "rk4", ctx);
        CurvatureField cf = curvature(make_potential("zero", 0.0, 0.0), g);
        CHECK(mass_charge_residual(traj, 2, ctx).l2 < 1e-10);
        CHECK(momentum_balance_residual(traj, 2, ctx, cf).l2 < 1e-10);
    }
    SUBCASE("free Gaussian: order-2 decay under stride halving") {
        Grid g(32, 6.0);
        EvolveContext ctx = EvolveContext::make(g, make_potential("zero", 0.0, 0.0),
                                                NonlinearitySpec{0.0, 1.0});
        ComplexField u0 = gaussian_state(g, 1.0, 0.8);
        // one fine run; residuals at coarser strides via subsampling
        Trajectory fine = run_trajectory(u0, 0.64, 0.04, "rk4", ctx);
        auto subsample = [&](int every) {
            Trajectory t;
            t.stride = fine.stride * every;
            t.dt = fine.dt;
            for (int k = 0; k < fine.count(); k += every) {
                t.times.push_back(fine.times[k]);
                t.snaps.push_back(fine.snaps[k]);
            }
            return t;
        };
        CurvatureField cf = curvature(make_potential("zero", 0.0, 0.0), g);
        Trajectory t4 = subsample(4), t2 = subsample(2);
        // residual at the shared interior time t = 0.32
        const double r4 = mass_charge_residual(t4, 2, ctx).l2;
        const double r2 = mass_charge_residual(t2, 4, ctx).l2;
        const double r1 = mass_charge_residual(fine, 8, ctx).l2;
        CHECK(r4 / r2 > 3.4);
        CHECK(r2 / r1 > 3.4);
        const double m4 = momentum_balance_residual(t4, 2, ctx, cf).l2;
        const double m2 = momentum_balance_residual(t2, 4, ctx, cf).l2;
        const double m1 = momentum_balance_residual(fine, 8, ctx, cf).l2;
        CHECK(m4 / m2 > 3.4);
        CHECK(m2 / m1 > 3.4);
    }
    SUBCASE("plane wave in uniform_B: source term matches the hand computation") {
        Grid g(16, 2.0);
        const double b0 = 1.0;
        GaugePotential gp = make_potential("uniform_B", b0, 0.0);
        EvolveContext ctx = EvolveContext::make(g, gp, NonlinearitySpec{0.0, 1.0});
        const Vec3 mode{1.0, 2.0, -1.0};
        ComplexField u = plane_wave_state(g, mode);
        StressTensor st = stress_tensor(u, ctx);
        CurvatureField cf = curvature(gp, g);
        const double k0 = g.k_fundamental();
        for (int i3 = 0; i3 < g.n; i3 += 3)
            for (int i2 = 0; i2 < g.n; i2 += 3)
                for (int i1 = 0; i1 < g.n; i1 += 3) {
                    const std::int64_t id = g.index(i1, i2, i3);
                    const Vec3 x = g.point(i1, i2, i3);
                    // T_k0 = k_k + A_k, F_12 = b0; the Lorentz-type source is
                    // source_j = 2 F_{kj} T_k0
                    const double t10 = k0 * mode.x - 0.5 * b0 * x.y;
                    const double t20 = k0 * mode.y + 0.5 * b0 * x.x;
                    double source[3] = {-2.0 * b0 * t20, 2.0 * b0 * t10, 0.0};
                    for (int j = 0; j < 3; ++j) {
                        double got = 0.0;
                        for (int kk = 0; kk < 3; ++kk)
                            got += 2.0 * cf.f(kk, j, id) * st.tj0[kk].v[id];
                        CHECK(std::abs(got - source[j]) < 1e-9);
                    }
                }
    }
}

#include <doctest.h>

#include <cmath>

#include "mnls/integrate.hpp"
#include "mnls/norms.hpp"
#include "mnls/spectral.hpp"
#include "mnls/states.hpp"
#include "mnls/stress.hpp"

using namespace mnls;

namespace {
EvolveContext zero_ctx(const Grid& g, double mu = 0.0) {
    return EvolveContext::make(g, make_potential("zero", 0.0, 0.0), NonlinearitySpec{mu, 1.0});
}
const double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("norm spec admissibility") {
    CHECK(NormSpec{10.0 / 3.0, 10.0 / 3.0}.admissible());
    CHECK(NormSpec{kInf, 2.0}.admissible());
    CHECK(!NormSpec{2.0, 6.0}.admissible());   // endpoint excluded at n = 3
    CHECK(!NormSpec{4.0, 4.0}.admissible());   // wrong scaling
    CHECK(NormSpec{4.0, 3.0}.admissible());
}

TEST_CASE("spacetime norm basics") {
    Grid g(16, 4.0);
    ComplexField u = gaussian_state(g, 1.0, 1.0);
    Trajectory traj;
    traj.stride = 0.25;
    for (int k = 0; k <= 4; ++k) {
        traj.times.push_back(k * 0.25);
        traj.snaps.push_back(u);  // constant in time
    }
    SUBCASE("separable for constant-in-time data") {
        const double l4 = std::pow(lp_norm_pow(u, 4.0), 0.25);
        const double got = spacetime_norm(traj, NormSpec{4.0, 4.0});
        CHECK(got == doctest::Approx(std::pow(1.0, 0.25) * l4).epsilon(1e-12));
        const double linfl2 = spacetime_norm(traj, NormSpec{kInf, 2.0});
        CHECK(linfl2 == doctest::Approx(l2_norm(u)).epsilon(1e-12));
    }
    SUBCASE("zero trajectory") {
        Trajectory z;
        z.stride = 0.25;
        for (int k = 0; k <= 2; ++k) {
            z.times.push_back(k * 0.25);
            z.snaps.push_back(ComplexField(g));
        }
        CHECK(spacetime_norm(z, NormSpec{4.0, 4.0}) == 0.0);
    }
    SUBCASE("1-homogeneous in u and monotone in T") {
        Trajectory half = traj;
        half.times.resize(3);
        half.snaps.resize(3);
        CHECK(spacetime_norm(half, NormSpec{4.0, 4.0}) <=
              spacetime_norm(traj, NormSpec{4.0, 4.0}));
        Trajectory scaled = traj;
        for (auto& s : scaled.snaps)
            for (auto& z : s.v) z *= 3.0;
        CHECK(spacetime_norm(scaled, NormSpec{4.0, 4.0}) ==
              doctest::Approx(3.0 * spacetime_norm(traj, NormSpec{4.0, 4.0})).epsilon(1e-12));
    }
}

TEST_CASE("tangential gradient") {
    SUBCASE("radial states have no tangential part") {
        // needs both face decay and spectral headroom for the 1e-10 target
        Grid g(64, 6.0);
        EvolveContext ctx = zero_ctx(g);
        ComplexField u = gaussian_state(g, 1.0, 0.8);
        VectorField tau = tangential_gradient(u, ctx);
        double worst = 0.0;
        for (int j = 0; j < 3; ++j) worst = std::max(worst, linf_norm(tau[j]));
        CHECK(worst < 1e-10);
    }
    SUBCASE("plane wave: full gradient is tangential where x is perpendicular to k") {
        Grid g(16, 4.0);
        EvolveContext ctx = zero_ctx(g);
        const Vec3 mode{2.0, 0.0, 0.0};
        ComplexField u = plane_wave_state(g, mode);
        VectorField tau = tangential_gradient(u, ctx);
        const double kmag = g.k_fundamental() * 2.0;
        // pick points with x nearly orthogonal to e1
        for (int i3 = 0; i3 < g.n; i3 += 3)
            for (int i2 = 0; i2 < g.n; i2 += 3) {
                const int i1 = g.n / 2;  // x1 = h/2, small against |x|
                const Vec3 x = g.point(i1, i2, i3);
                if (norm(x) < 2.0) continue;
                const double frac = std::abs(x.x) / norm(x);
                if (frac > 0.05) continue;
                const double mag = std::sqrt(std::norm(tau[0].at(i1, i2, i3)) +
                                             std::norm(tau[1].at(i1, i2, i3)) +
                                             std::norm(tau[2].at(i1, i2, i3)));
                CHECK(mag == doctest::Approx(kmag).epsilon(0.02));
            }
    }
    SUBCASE("orthogonal decomposition |tau|^2 + |radial|^2 = |grad_A u|^2") {
        Grid g(16, 4.0);
        GaugePotential gp = make_potential("smooth_decay", 0.3, 0.5);
        EvolveContext ctx = EvolveContext::make(g, gp, NonlinearitySpec{0.0, 1.0});
        ComplexField u = random_smooth_state(g, 17, 1.0, 0.0, 3);
        VectorField tau = tangential_gradient(u, ctx);
        StressTensor st = stress_tensor(u, ctx);
        for (int i3 = 0; i3 < g.n; i3 += 2)
            for (int i2 = 0; i2 < g.n; i2 += 2)
                for (int i1 = 0; i1 < g.n; i1 += 2) {
                    const std::int64_t id = g.index(i1, i2, i3);
                    const Vec3 x = g.point(i1, i2, i3);
                    const double r = norm(x);
                    cplx radial{0.0, 0.0};
                    for (int j = 0; j < 3; ++j) radial += x[j] / r * st.du[j].v[id];
                    const double tau_sq = std::norm(tau[0].v[id]) + std::norm(tau[1].v[id]) +
                                          std::norm(tau[2].v[id]);
                    const double du_sq = std::norm(st.du[0].v[id]) +
                                         std::norm(st.du[1].v[id]) +
                                         std::norm(st.du[2].v[id]);
                    CHECK(tau_sq + std::norm(radial) ==
                          doctest::Approx(du_sq).epsilon(1e-12));
                }
    }
}

TEST_CASE("strichartz quotient") {
    Grid g(16, 6.0);
    EvolveContext ctx = zero_ctx(g);
    ComplexField u0 = gaussian_state(g, 1.0, 1.0);
    SUBCASE("(inf, 2) realizes mass conservation") {
        StrichartzQuotient sq = strichartz_quotient(u0, ctx, NormSpec{kInf, 2.0}, 1.0, 0.25);
        CHECK(sq.admissible);
        CHECK(sq.value == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("uniform over random data at (10/3, 10/3)") {
        const NormSpec ns{10.0 / 3.0, 10.0 / 3.0};
        double lo = 1e30, hi = 0.0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            ComplexField w = random_smooth_state(g, 300 + seed, 1.0, 1.2, 2);
            StrichartzQuotient sq = strichartz_quotient(w, ctx, ns, 1.0, 0.125);
            lo = std::min(lo, sq.value);
            hi = std::max(hi, sq.value);
        }
        CHECK(hi / lo <= 3.0);
    }
    SUBCASE("magnetic vs free quotients stay comparable") {
        GaugePotential gp = make_potential("smooth_decay", 0.1, 0.5);
        EvolveContext mag = EvolveContext::make(g, gp, NonlinearitySpec{0.0, 1.0});
        const NormSpec ns{10.0 / 3.0, 10.0 / 3.0};
        StrichartzQuotient a = strichartz_quotient(u0, ctx, ns, 0.5, 0.125);
        StrichartzQuotient b = strichartz_quotient(u0, mag, ns, 0.5, 0.125);
        CHECK(b.value / a.value <= 5.0);
        CHECK(a.value / b.value <= 5.0);
    }
    SUBCASE("inadmissible pair flagged but computed") {
        StrichartzQuotient sq = strichartz_quotient(u0, ctx, NormSpec{4.0, 4.0}, 0.5, 0.25);
        CHECK(sq.flagged);
        CHECK(sq.value > 0.0);
    }
}

TEST_CASE("interpolation consistency of spacetime norms") {
    Grid g(16, 6.0);
    EvolveContext ctx = zero_ctx(g, 1.0);
    ComplexField u0 = gaussian_state(g, 0.8, 1.0);
    Trajectory traj = run_trajectory(u0, 0.5, 0.125, "rk4", ctx);
    const double lhs = spacetime_norm(traj, NormSpec{4.5, 54.0 / 13.0});
    const double l4 = spacetime_norm(traj, NormSpec{4.0, 4.0});
    const double linf6 = spacetime_norm(traj, NormSpec{kInf, 6.0});
    CHECK(lhs <= std::pow(l4, 8.0 / 9.0) * std::pow(linf6, 1.0 / 9.0) * (1.0 + 1e-9));
}

TEST_CASE("smoothing functionals") {
    Grid g(32, 8.0);
    EvolveContext ctx = zero_ctx(g);
    ComplexField u0 = gaussian_state(g, 1.0, 1.0);
    Trajectory traj = run_trajectory(u0, 0.5, 0.125, "rk4", ctx);
    SmoothingReport rep = smoothing_functionals(traj, ctx);
    // radial data: the tangential term sits at the cube-anisotropy floor of
    // the dealiased evolution, orders below the other functionals
    CHECK(rep.tangential_term <= 1e-6 * rep.proxy_rhs);
    CHECK(rep.local_term > 0.0);
    CHECK(rep.sphere_term > 0.0);
    CHECK(rep.proxy_rhs > 0.0);
    CHECK(rep.ratio_local == doctest::Approx(rep.local_term / rep.proxy_rhs));
    CHECK_THROWS(smoothing_functionals(traj, zero_ctx(g, -1.0)));
}

TEST_CASE("scattering monitor") {
    Grid g(16, 8.0);
    SUBCASE("mu = 0: the pulled-back flow is static") {
        Grid gf(32, 8.0);  // resolved width-1.2 state, boundary mass stays tiny
        EvolveContext ctx = zero_ctx(gf, 0.0);
        ComplexField u0 = gaussian_state(gf, 1.0, 1.2);
        Trajectory traj = run_trajectory(u0, 1.0, 0.25, "rk4", ctx);
        CauchyTable table = scattering_monitor(traj, ctx);
        REQUIRE(!table.rows.empty());
        for (const auto& row : table.rows) {
            CHECK(row.l2_increment < 1e-7);
            CHECK(row.h1_increment < 1e-6);
        }
        CHECK(table.monotone_decay);
    }
    SUBCASE("small-data cubic defocusing: increments halve per unit time") {
        // desk-size box: the dispersive window closes when the wave reaches the
        // boundary (the monitor truncates there); the full-scale N=64, L=16
        // window lives in configs/scatter_free_cubic.json
        Grid gf(32, 12.0);
        EvolveContext ctx = EvolveContext::make(gf, make_potential("zero", 0.0, 0.0),
                                                NonlinearitySpec{1.0, 1.0});
        ComplexField u0 = gaussian_state(gf, 0.4, 1.0);
        Trajectory traj = run_trajectory(u0, 4.0, 0.5, "rk4", ctx);
        CauchyTable table = scattering_monitor(traj, ctx);
        REQUIRE(table.rows.size() >= 3);
        for (std::size_t k = 0; k + 2 < table.rows.size(); ++k)
            CHECK(table.rows[k + 2].l2_increment <= 0.5 * table.rows[k].l2_increment);
        CHECK(table.monotone_decay);
        CHECK(std::isfinite(table.truncated_at));  // box-limited window is flagged
    }
    SUBCASE("truncates once boundary mass passes 1%") {
        EvolveContext ctx = zero_ctx(g, 0.0);
        // wide state: mass near the faces from the start
        ComplexField u0 = gaussian_state(g, 1.0, 4.0);
        Trajectory traj = run_trajectory(u0, 0.5, 0.25, "rk4", ctx);
        CauchyTable table = scattering_monitor(traj, ctx);
        CHECK(table.truncated_at == 0.0);
        CHECK(table.rows.empty());
    }
}

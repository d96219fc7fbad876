#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mnls/audit.hpp"
#include "mnls/convolve.hpp"
#include "mnls/integrate.hpp"
#include "mnls/runner.hpp"
#include "mnls/stress.hpp"
#include "mnls/states.hpp"

namespace mnls {

namespace {

struct OracleOutcome {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double bound = 0.0;
};

// direct O(N^6) convolution with the identical discrete kernel
RealField direct_convolve(const RealField& f, PadKernel k) {
    const Grid& g = f.grid;
    const double h = g.spacing();
    RealField out(g);
    for (int a3 = 0; a3 < g.n; ++a3)
        for (int a2 = 0; a2 < g.n; ++a2)
            for (int a1 = 0; a1 < g.n; ++a1) {
                double acc = 0.0;
                for (int b3 = 0; b3 < g.n; ++b3)
                    for (int b2 = 0; b2 < g.n; ++b2)
                        for (int b1 = 0; b1 < g.n; ++b1) {
                            const Vec3 d{(a1 - b1) * h, (a2 - b2) * h, (a3 - b3) * h};
                            acc += free_kernel_value(k, d, h) * f.at(b1, b2, b3);
                        }
                out.at(a1, a2, a3) = acc * g.cell_volume();
            }
    return out;
}

OracleOutcome convolution_oracle() {
    OracleOutcome o{"8^3 convolution equivalence (riesz, x, eta)", false, 0.0, 1e-10};
    Grid g(8, 1.0);
    RealField f = real_part(random_smooth_state(g, 1234, 1.0, 0.5, 2));
    double worst = 0.0;
    for (PadKernel k : {PadKernel::riesz, PadKernel::x1, PadKernel::x2, PadKernel::x3,
                        PadKernel::eta11, PadKernel::eta22, PadKernel::eta33, PadKernel::eta12,
                        PadKernel::eta13, PadKernel::eta23}) {
        RealField fast = convolve_free(f, k);
        RealField slow = direct_convolve(f, k);
        const double scale = std::max(linf_norm(slow), 1e-300);
        for (std::size_t i = 0; i < fast.v.size(); ++i)
            worst = std::max(worst, std::abs(fast.v[i] - slow.v[i]) / scale);
    }
    o.value = worst;
    o.pass = worst <= o.bound;
    return o;
}

OracleOutcome picard_oracle() {
    OracleOutcome o{"picard iteration vs rk4 stepper (16^3)", false, 0.0, 1e-5};
    Grid g(16, 6.0);
    EvolveContext ctx = EvolveContext::make(g, make_potential("zero", 0.0, 0.0),
                                            NonlinearitySpec{1.0, 1.0});
    ComplexField u0 = gaussian_state(g, 0.5, 1.2);
    PicardConfig pc;
    pc.horizon = 0.05;
    PicardResult res = picard_iterate(u0, pc, ctx);
    Trajectory traj = run_trajectory(u0, pc.horizon, pc.horizon, "rk4", ctx);
    o.value = l2_distance(res.final_state, traj.snaps.back());
    o.pass = res.contractive && o.value <= o.bound;
    return o;
}

OracleOutcome gaussian_oracle() {
    OracleOutcome o{"free Gaussian closed form (N=64, t=0.5)", false, 0.0, 1e-4};
    Grid g(64, 12.0);
    EvolveContext ctx = EvolveContext::make(g, make_potential("zero", 0.0, 0.0),
                                            NonlinearitySpec{0.0, 1.0});
    ComplexField u0 = gaussian_state(g, 1.0, 1.0);
    Trajectory traj = run_trajectory(u0, 0.5, 0.25, "rk4", ctx);
    const double t = 0.5;
    ComplexField exact(g);
    const cplx denom{1.0, 2.0 * t};
    const cplx amp = std::pow(cplx{1.0, 0.0} / denom, 1.5);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const Vec3 x = g.point(i1, i2, i3);
                exact.at(i1, i2, i3) = amp * std::exp(-dot(x, x) / (2.0 * denom));
            }
    o.value = l2_distance(traj.snaps.back(), exact) / l2_norm(exact);
    const double mass_drift = std::abs(mass(traj.snaps.back()) - mass(u0)) / mass(u0);
    o.pass = o.value <= o.bound && mass_drift <= 1e-8;
    return o;
}

OracleOutcome kato_oracle() {
    OracleOutcome o{"Kato norm of the ball indicator vs 2 pi R^2", false, 0.0, 0.01};
    Grid g(64, 4.0);
    const double radius = 1.0;
    RealField f(g);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const Vec3 x = g.point(i1, i2, i3);
                const double r = norm(x);
                const double half_diag = 0.5 * std::sqrt(3.0) * g.spacing();
                if (r < radius - half_diag) {
                    f.at(i1, i2, i3) = 1.0;
                } else if (r < radius + half_diag) {
                    int in = 0;
                    const int s = 4;
                    for (int a = 0; a < s; ++a)
                        for (int b = 0; b < s; ++b)
                            for (int c = 0; c < s; ++c) {
                                Vec3 y = x;
                                y.x += ((a + 0.5) / s - 0.5) * g.spacing();
                                y.y += ((b + 0.5) / s - 0.5) * g.spacing();
                                y.z += ((c + 0.5) / s - 0.5) * g.spacing();
                                if (norm(y) <= radius) ++in;
                            }
                    f.at(i1, i2, i3) = static_cast<double>(in) / (s * s * s);
                }
            }
    const double want = 2.0 * M_PI * radius * radius;
    o.value = std::abs(kato_norm(f) - want) / want;
    o.pass = o.value <= o.bound;
    return o;
}

}  // namespace

int cmd_selftest(const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream log(out_dir + "/selftest.txt", std::ios::binary);
    bool all = true;
    for (auto* fn : {convolution_oracle, picard_oracle, gaussian_oracle, kato_oracle}) {
        OracleOutcome o = fn();
        all = all && o.pass;
        std::ostringstream line;
        line << (o.pass ? "PASS " : "FAIL ") << o.name << "  (value " << o.value
             << ", bound " << o.bound << ")\n";
        std::cout << line.str();
        log << line.str();
    }
    return all ? 0 : 1;
}

}  // namespace mnls

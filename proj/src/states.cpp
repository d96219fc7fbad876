#include "mnls/states.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace mnls {

ComplexField gaussian_state(const Grid& g, double amplitude, double width, Vec3 center,
                            double chirp, Vec3 phase_k) {
    ComplexField u(g);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const Vec3 x = g.point(i1, i2, i3);
                const Vec3 d = x - center;
                const double env = amplitude * std::exp(-dot(d, d) / (2.0 * width * width));
                const double phase = chirp * dot(x, x) + dot(phase_k, x);
                u.at(i1, i2, i3) = env * cplx{std::cos(phase), std::sin(phase)};
            }
    return u;
}

ComplexField plane_wave_state(const Grid& g, Vec3 mode_vec) {
    const double k0 = g.k_fundamental();
    ComplexField u(g);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const Vec3 x = g.point(i1, i2, i3);
                const double phase = k0 * dot(mode_vec, x);
                u.at(i1, i2, i3) = cplx{std::cos(phase), std::sin(phase)};
            }
    return u;
}

namespace {

struct ModeSet {
    std::vector<std::array<int, 3>> modes;
    std::vector<cplx> coeff;
};

ModeSet random_modes(std::uint64_t seed, int max_mode) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ModeSet ms;
    for (int m3 = -max_mode; m3 <= max_mode; ++m3)
        for (int m2 = -max_mode; m2 <= max_mode; ++m2)
            for (int m1 = -max_mode; m1 <= max_mode; ++m1) {
                const double m2sum = m1 * m1 + m2 * m2 + m3 * m3;
                const double w = 1.0 / ((1.0 + m2sum) * (1.0 + m2sum));
                ms.modes.push_back({m1, m2, m3});
                ms.coeff.push_back(w * cplx{gauss(rng), gauss(rng)});
            }
    return ms;
}

}  // namespace

namespace {

// sum of coeff_m exp(i k0 m.x) via per-axis phase tables
ComplexField trig_sum(const Grid& g, const ModeSet& ms, int max_mode) {
    const double k0 = g.k_fundamental();
    const int nm = 2 * max_mode + 1;
    std::vector<cplx> table(static_cast<std::size_t>(nm) * g.n);
    for (int m = -max_mode; m <= max_mode; ++m)
        for (int i = 0; i < g.n; ++i) {
            const double phase = k0 * m * g.coord(i);
            table[(m + max_mode) * g.n + i] = cplx{std::cos(phase), std::sin(phase)};
        }
    auto tb = [&](int m, int i) { return table[(m + max_mode) * g.n + i]; };

    ComplexField u(g);
    for (std::size_t m = 0; m < ms.modes.size(); ++m) {
        const auto& mv = ms.modes[m];
        const cplx c = ms.coeff[m];
        for (int i3 = 0; i3 < g.n; ++i3) {
            const cplx p3 = c * tb(mv[2], i3);
            for (int i2 = 0; i2 < g.n; ++i2) {
                const cplx p23 = p3 * tb(mv[1], i2);
                cplx* row = &u.v[g.index(0, i2, i3)];
                for (int i1 = 0; i1 < g.n; ++i1) row[i1] += p23 * tb(mv[0], i1);
            }
        }
    }
    return u;
}

}  // namespace

ComplexField random_smooth_state(const Grid& g, std::uint64_t seed, double amplitude,
                                 double envelope_width, int max_mode) {
    if (envelope_width <= 0.0) envelope_width = g.box_half_length / 4.0;
    ComplexField u = trig_sum(g, random_modes(seed, max_mode), max_mode);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const Vec3 x = g.point(i1, i2, i3);
                const double env = std::exp(-dot(x, x) / (2.0 * envelope_width * envelope_width));
                u.at(i1, i2, i3) *= amplitude * env;
            }
    return u;
}

ComplexField random_band_limited(const Grid& g, std::uint64_t seed, int max_mode) {
    return trig_sum(g, random_modes(seed, max_mode), max_mode);
}

}  // namespace mnls

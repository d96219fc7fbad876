#include "mnls/gauge.hpp"

#include <cmath>
#include <stdexcept>

#include "mnls/spectral.hpp"

namespace mnls {

namespace {

// smooth_decay is built from the stream function psi = <x>^{-eps}:
// A = amplitude * curl(psi e3) = w(x) (-x2, x1, 0) with
// w = amplitude * eps * s^{-(eps+2)/2}, s = 1 + |x|^2. Divergence-free by
// construction and |dA| ~ <x>^{-2-eps}.
double smooth_decay_w(double amplitude, double eps, double s) {
    return amplitude * eps * std::pow(s, -0.5 * (eps + 2.0));
}

double smooth_decay_wprime(double amplitude, double eps, double s) {
    return -0.5 * amplitude * eps * (eps + 2.0) * std::pow(s, -0.5 * (eps + 4.0));
}

}  // namespace

bool GaugePotential::is_zero() const {
    if (family == GaugeFamily::zero) return true;
    if (family != GaugeFamily::sampled) return amplitude == 0.0;
    for (int j = 0; j < 3; ++j)
        for (double x : a_samples[j].v)
            if (x != 0.0) return false;
    for (double x : a0_samples.v)
        if (x != 0.0) return false;
    return true;
}

Vec3 GaugePotential::vector_potential(Vec3 x) const {
    switch (family) {
        case GaugeFamily::zero:
        case GaugeFamily::radial_a0:
            return {};
        case GaugeFamily::uniform_b:
            return {-0.5 * amplitude * x.y, 0.5 * amplitude * x.x, 0.0};
        case GaugeFamily::smooth_decay: {
            const double w = smooth_decay_w(amplitude, epsilon, 1.0 + dot(x, x));
            return {-w * x.y, w * x.x, 0.0};
        }
        case GaugeFamily::sampled:
            throw std::logic_error("sampled potential has no pointwise evaluation");
    }
    return {};
}

double GaugePotential::scalar_potential(Vec3 x) const {
    if (family == GaugeFamily::radial_a0)
        return amplitude * std::pow(1.0 + dot(x, x), -0.5 * (2.0 + epsilon));
    if (family == GaugeFamily::sampled)
        throw std::logic_error("sampled potential has no pointwise evaluation");
    return 0.0;
}

Vec3 GaugePotential::curl_a(Vec3 x) const {
    switch (family) {
        case GaugeFamily::zero:
        case GaugeFamily::radial_a0:
            return {};
        case GaugeFamily::uniform_b:
            return {0.0, 0.0, amplitude};
        case GaugeFamily::smooth_decay: {
            const double s = 1.0 + dot(x, x);
            const double w = smooth_decay_w(amplitude, epsilon, s);
            const double wp = smooth_decay_wprime(amplitude, epsilon, s);
            return {-2.0 * x.x * x.z * wp, -2.0 * x.y * x.z * wp,
                    2.0 * w + 2.0 * (x.x * x.x + x.y * x.y) * wp};
        }
        case GaugeFamily::sampled:
            throw std::logic_error("sampled potential has no pointwise curl");
    }
    return {};
}

Vec3 GaugePotential::grad_a0(Vec3 x) const {
    if (family == GaugeFamily::radial_a0) {
        const double s = 1.0 + dot(x, x);
        const double c = -amplitude * (2.0 + epsilon) * std::pow(s, -0.5 * (4.0 + epsilon));
        return c * x;
    }
    if (family == GaugeFamily::sampled)
        throw std::logic_error("sampled potential has no pointwise gradient");
    return {};
}

RealVectorField GaugePotential::sample_a(const Grid& g) const {
    if (family == GaugeFamily::sampled) {
        if (a_samples.grid() != g) throw std::invalid_argument("sampled potential grid mismatch");
        return a_samples;
    }
    RealVectorField out(g);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const Vec3 a = vector_potential(g.point(i1, i2, i3));
                const std::int64_t id = g.index(i1, i2, i3);
                for (int j = 0; j < 3; ++j) out[j].v[id] = a[j];
            }
    return out;
}

RealField GaugePotential::sample_a0(const Grid& g) const {
    if (family == GaugeFamily::sampled) {
        if (a0_samples.grid != g) throw std::invalid_argument("sampled potential grid mismatch");
        return a0_samples;
    }
    RealField out(g);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1)
                out.v[g.index(i1, i2, i3)] = scalar_potential(g.point(i1, i2, i3));
    return out;
}

GaugePotential make_potential(const std::string& family, double amplitude, double epsilon) {
    GaugePotential gp;
    gp.amplitude = amplitude;
    gp.epsilon = epsilon;
    if (family == "zero") {
        gp.family = GaugeFamily::zero;
        gp.amplitude = 0.0;
    } else if (family == "uniform_B" || family == "uniform_b") {
        gp.family = GaugeFamily::uniform_b;
    } else if (family == "smooth_decay") {
        gp.family = GaugeFamily::smooth_decay;
        if (!(epsilon > 0.0)) throw std::invalid_argument("smooth_decay: epsilon must be > 0");
    } else if (family == "radial_A0" || family == "radial_a0") {
        gp.family = GaugeFamily::radial_a0;
        if (!(epsilon > 0.0)) throw std::invalid_argument("radial_A0: epsilon must be > 0");
    } else {
        throw std::invalid_argument("unknown gauge family: " + family);
    }
    return gp;
}

GaugePotential coulomb_project(const RealVectorField& a, const RealField& a0) {
    GaugePotential gp;
    gp.family = GaugeFamily::sampled;
    gp.a_samples = leray_project(a);
    gp.a0_samples = a0;
    return gp;
}

CurvatureField curvature(const GaugePotential& gp, const Grid& g) {
    CurvatureField cf;
    cf.grid = g;
    cf.curl_a = RealVectorField(g);
    cf.f0 = RealVectorField(g);
    cf.da_magnitude = RealField(g);
    cf.b_tau = RealVectorField(g);

    if (gp.analytic()) {
        for (int i3 = 0; i3 < g.n; ++i3)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    const Vec3 x = g.point(i1, i2, i3);
                    const std::int64_t id = g.index(i1, i2, i3);
                    const Vec3 c = gp.curl_a(x);
                    const Vec3 ga0 = gp.grad_a0(x);
                    for (int j = 0; j < 3; ++j) {
                        cf.curl_a[j].v[id] = c[j];
                        cf.f0[j].v[id] = -ga0[j];
                    }
                }
    } else {
        // spectral derivatives of the sampled potential
        std::array<RealVectorField, 3> da;  // da[j] = grad of A_j
        for (int j = 0; j < 3; ++j) da[j] = spectral_gradient(gp.a_samples[j]);
        RealVectorField ga0 = spectral_gradient(gp.a0_samples);
        for (std::int64_t id = 0; id < g.size(); ++id) {
            cf.curl_a[0].v[id] = da[2][1].v[id] - da[1][2].v[id];
            cf.curl_a[1].v[id] = da[0][2].v[id] - da[2][0].v[id];
            cf.curl_a[2].v[id] = da[1][0].v[id] - da[0][1].v[id];
            for (int j = 0; j < 3; ++j) cf.f0[j].v[id] = -ga0[j].v[id];
        }
    }

    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const std::int64_t id = g.index(i1, i2, i3);
                const Vec3 x = g.point(i1, i2, i3);
                const double r = norm(x);
                const Vec3 c{cf.curl_a[0].v[id], cf.curl_a[1].v[id], cf.curl_a[2].v[id]};
                cf.da_magnitude.v[id] = norm(c);
                // b_tau_k = (x_j/|x|) F_jk = (curl A x x/|x|)_k
                const Vec3 bt = cross(c, (1.0 / r) * x);
                for (int k = 0; k < 3; ++k) cf.b_tau[k].v[id] = bt[k];
            }
    return cf;
}

}  // namespace mnls

#pragma once

#include <string>

#include "mnls/field.hpp"

namespace mnls {

enum class GaugeFamily { zero, uniform_b, smooth_decay, radial_a0, sampled };

/// Time-independent gauge potential (A0, A). Built-in families are analytic
/// with closed-form curvature; sampled potentials come from coulomb_project
/// or from snapshot files and differentiate spectrally.
struct GaugePotential {
    GaugeFamily family = GaugeFamily::zero;
    double amplitude = 0.0;  // c for the decay families, B0 for uniform_b
    double epsilon = 0.5;    // decay rate

    RealVectorField a_samples;  // family == sampled only
    RealField a0_samples;

    bool analytic() const { return family != GaugeFamily::sampled; }
    bool is_zero() const;

    Vec3 vector_potential(Vec3 x) const;
    double scalar_potential(Vec3 x) const;
    Vec3 curl_a(Vec3 x) const;
    Vec3 grad_a0(Vec3 x) const;

    RealVectorField sample_a(const Grid& g) const;
    RealField sample_a0(const Grid& g) const;
};

/// family: zero | uniform_B | smooth_decay | radial_A0. uniform_B takes the
/// field strength in `amplitude`; the decay families take amplitude and a
/// positive decay rate epsilon.
GaugePotential make_potential(const std::string& family, double amplitude, double epsilon);

/// Spectral Leray projection of a sampled vector potential, A <- A - grad
/// lap^{-1}(div A); the zero mode is untouched. A0 passes through unchanged.
GaugePotential coulomb_project(const RealVectorField& a, const RealField& a0);

struct CurvatureField {
    Grid grid;
    RealVectorField curl_a;       // (F_23, F_31, F_12)
    RealVectorField f0;           // F_{0j} = -d_j A0
    RealField da_magnitude;       // |dA| = |curl A|
    RealVectorField b_tau;        // k-component: (x_j/|x|) F_jk

    /// Antisymmetric spatial curvature accessor.
    double f(int j, int k, std::int64_t idx) const {
        if (j == k) return 0.0;
        // F_12 = curl_3, F_23 = curl_1, F_31 = curl_2
        if (j == 0 && k == 1) return curl_a[2].v[idx];
        if (j == 1 && k == 0) return -curl_a[2].v[idx];
        if (j == 1 && k == 2) return curl_a[0].v[idx];
        if (j == 2 && k == 1) return -curl_a[0].v[idx];
        if (j == 2 && k == 0) return curl_a[1].v[idx];
        return -curl_a[1].v[idx];  // (0,2)
    }
};

CurvatureField curvature(const GaugePotential& gp, const Grid& g);

}  // namespace mnls

#include "mnls/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "mnls/fft.hpp"

namespace mnls {

namespace {

// wavenumber along one axis with the Nyquist derivative convention: the
// m = -N/2 mode has no well-defined odd derivative and is mapped to 0.
inline double deriv_wavenumber(const Grid& g, int i) {
    const int m = g.mode(i);
    if (m == -g.n / 2) return 0.0;
    return g.k_fundamental() * m;
}

template <class Fn>
ComplexField apply_multiplier(const ComplexField& f, Fn&& mult) {
    const Grid& g = f.grid;
    ComplexField fh = fft_forward(f);
#pragma omp parallel for schedule(static)
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) fh.at(i1, i2, i3) *= mult(i1, i2, i3);
    return fft_inverse(fh);
}

}  // namespace

ComplexField spectral_derivative(const ComplexField& f, int axis) {
    const Grid& g = f.grid;
    return apply_multiplier(f, [&](int i1, int i2, int i3) {
        const int i = axis == 0 ? i1 : (axis == 1 ? i2 : i3);
        return cplx{0.0, deriv_wavenumber(g, i)};
    });
}

VectorField spectral_gradient(const ComplexField& f) {
    const Grid& g = f.grid;
    ComplexField fh = fft_forward(f);
    VectorField out(g);
    for (int axis = 0; axis < 3; ++axis) {
        ComplexField dh(g);
        for (int i3 = 0; i3 < g.n; ++i3)
            for (int i2 = 0; i2 < g.n; ++i2)
                for (int i1 = 0; i1 < g.n; ++i1) {
                    const int i = axis == 0 ? i1 : (axis == 1 ? i2 : i3);
                    dh.at(i1, i2, i3) = fh.at(i1, i2, i3) * cplx{0.0, deriv_wavenumber(g, i)};
                }
        out[axis] = fft_inverse(dh);
    }
    return out;
}

ComplexField spectral_laplacian(const ComplexField& f) {
    const Grid& g = f.grid;
    return apply_multiplier(f, [&](int i1, int i2, int i3) {
        const double k1 = g.wavenumber(i1), k2 = g.wavenumber(i2), k3 = g.wavenumber(i3);
        return -(k1 * k1 + k2 * k2 + k3 * k3);
    });
}

RealField spectral_derivative(const RealField& f, int axis) {
    return real_part(spectral_derivative(to_complex(f), axis));
}

RealVectorField spectral_gradient(const RealField& f) {
    VectorField grad = spectral_gradient(to_complex(f));
    RealVectorField out(f.grid);
    for (int j = 0; j < 3; ++j) out[j] = real_part(grad[j]);
    return out;
}

RealField spectral_divergence(const RealVectorField& a) {
    const Grid& g = a.grid();
    RealField div(g);
    for (int j = 0; j < 3; ++j) {
        RealField dj = spectral_derivative(a[j], j);
        for (std::int64_t i = 0; i < g.size(); ++i) div.v[i] += dj.v[i];
    }
    return div;
}

ComplexField fractional_gradient_power(const ComplexField& f, double s) {
    if (s <= -3.0)
        throw std::invalid_argument("fractional_gradient_power: s <= -3 is not integrable in 3D");
    const Grid& g = f.grid;
    if (s == 0.0) return f;
    return apply_multiplier(f, [&](int i1, int i2, int i3) {
        const double k1 = g.wavenumber(i1), k2 = g.wavenumber(i2), k3 = g.wavenumber(i3);
        const double k2sum = k1 * k1 + k2 * k2 + k3 * k3;
        if (k2sum == 0.0) return 0.0;
        return std::pow(k2sum, 0.5 * s);
    });
}

ComplexField dealias_two_thirds(const ComplexField& f) {
    const Grid& g = f.grid;
    const int cutoff = g.n / 3;
    ComplexField fh = fft_forward(f);
    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                if (std::abs(g.mode(i1)) > cutoff || std::abs(g.mode(i2)) > cutoff ||
                    std::abs(g.mode(i3)) > cutoff)
                    fh.at(i1, i2, i3) = cplx{0.0, 0.0};
            }
    return fft_inverse(fh);
}

RealVectorField leray_project(const RealVectorField& a) {
    const Grid& g = a.grid();
    std::array<ComplexField, 3> ah;
    for (int j = 0; j < 3; ++j) ah[j] = fft_forward(to_complex(a[j]));

    for (int i3 = 0; i3 < g.n; ++i3)
        for (int i2 = 0; i2 < g.n; ++i2)
            for (int i1 = 0; i1 < g.n; ++i1) {
                const double k[3] = {deriv_wavenumber(g, i1), deriv_wavenumber(g, i2),
                                     deriv_wavenumber(g, i3)};
                const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
                if (k2 == 0.0) continue;
                const std::int64_t id = g.index(i1, i2, i3);
                cplx kdota{0.0, 0.0};
                for (int j = 0; j < 3; ++j) kdota += k[j] * ah[j].v[id];
                for (int j = 0; j < 3; ++j) ah[j].v[id] -= k[j] * kdota / k2;
            }

    RealVectorField out(g);
    for (int j = 0; j < 3; ++j) out[j] = real_part(fft_inverse(ah[j]));
    return out;
}

}  // namespace mnls

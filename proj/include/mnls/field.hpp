#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mnls/grid.hpp"

namespace mnls {

using cplx = std::complex<double>;

struct ComplexField {
    Grid grid;
    std::vector<cplx> v;

    ComplexField() = default;
    explicit ComplexField(const Grid& g) : grid(g), v(g.size(), cplx{0.0, 0.0}) {}

    cplx& at(int i1, int i2, int i3) { return v[grid.index(i1, i2, i3)]; }
    cplx at(int i1, int i2, int i3) const { return v[grid.index(i1, i2, i3)]; }

    bool finite() const {
        for (const cplx& z : v)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }
};

struct RealField {
    Grid grid;
    std::vector<double> v;

    RealField() = default;
    explicit RealField(const Grid& g) : grid(g), v(g.size(), 0.0) {}

    double& at(int i1, int i2, int i3) { return v[grid.index(i1, i2, i3)]; }
    double at(int i1, int i2, int i3) const { return v[grid.index(i1, i2, i3)]; }

    bool finite() const {
        return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
    }
};

struct VectorField {
    std::array<ComplexField, 3> comp;

    VectorField() = default;
    explicit VectorField(const Grid& g) : comp{ComplexField(g), ComplexField(g), ComplexField(g)} {}

    const Grid& grid() const { return comp[0].grid; }
    ComplexField& operator[](int j) { return comp[j]; }
    const ComplexField& operator[](int j) const { return comp[j]; }
};

struct RealVectorField {
    std::array<RealField, 3> comp;

    RealVectorField() = default;
    explicit RealVectorField(const Grid& g) : comp{RealField(g), RealField(g), RealField(g)} {}

    const Grid& grid() const { return comp[0].grid; }
    RealField& operator[](int j) { return comp[j]; }
    const RealField& operator[](int j) const { return comp[j]; }
};

/// Symmetric 3x3 tensor of real fields; unordered pairs stored once.
struct SymTensorField {
    Grid grid;
    // order: 11, 22, 33, 12, 13, 23
    std::array<RealField, 6> comp;

    SymTensorField() = default;
    explicit SymTensorField(const Grid& g)
        : grid(g), comp{RealField(g), RealField(g), RealField(g),
                        RealField(g), RealField(g), RealField(g)} {}

    static int slot(int j, int k) {
        if (j == k) return j;
        int a = std::min(j, k), b = std::max(j, k);
        if (a == 0) return b == 1 ? 3 : 4;
        return 5;  // (1,2)
    }
    RealField& operator()(int j, int k) { return comp[slot(j, k)]; }
    const RealField& operator()(int j, int k) const { return comp[slot(j, k)]; }
};

inline RealField real_part(const ComplexField& f) {
    RealField r(f.grid);
    for (std::int64_t i = 0; i < f.grid.size(); ++i) r.v[i] = f.v[i].real();
    return r;
}

inline ComplexField to_complex(const RealField& f) {
    ComplexField c(f.grid);
    for (std::int64_t i = 0; i < f.grid.size(); ++i) c.v[i] = cplx{f.v[i], 0.0};
    return c;
}

inline RealField abs2_field(const ComplexField& f) {
    RealField r(f.grid);
    for (std::int64_t i = 0; i < f.grid.size(); ++i) r.v[i] = std::norm(f.v[i]);
    return r;
}

}  // namespace mnls

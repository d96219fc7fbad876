#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mnls {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

/// Periodic grid on [-L, L)^3 with a half-cell offset: node i along an axis
/// sits at x = -L + (i + 1/2) h, h = 2L/N, so no sample hits the origin.
struct Grid {
    int n = 0;
    double box_half_length = 0.0;

    Grid() = default;
    Grid(int n_, double box_half_length_) : n(n_), box_half_length(box_half_length_) {
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid: N must be a power of two >= 8");
        if (!(box_half_length > 0.0))
            throw std::invalid_argument("Grid: box half-length must be positive");
    }

    double spacing() const { return 2.0 * box_half_length / n; }
    double cell_volume() const { double h = spacing(); return h * h * h; }
    std::int64_t size() const { return static_cast<std::int64_t>(n) * n * n; }

    // x1 is the fastest-varying axis.
    std::int64_t index(int i1, int i2, int i3) const {
        return (static_cast<std::int64_t>(i3) * n + i2) * n + i1;
    }

    double coord(int i) const { return -box_half_length + (i + 0.5) * spacing(); }
    Vec3 point(int i1, int i2, int i3) const { return {coord(i1), coord(i2), coord(i3)}; }

    // Signed FFT mode number in [-N/2, N/2).
    int mode(int i) const { return i < n / 2 ? i : i - n; }
    double wavenumber(int i) const { return M_PI / box_half_length * mode(i); }
    double k_fundamental() const { return M_PI / box_half_length; }

    bool operator==(const Grid&) const = default;
};

}  // namespace mnls

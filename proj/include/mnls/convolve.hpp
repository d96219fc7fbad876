#pragma once

#include "mnls/field.hpp"

namespace mnls {

/// Fraction of the L1 mass of the input within 2 cells of the box edge above
/// which the free-space convolutions flag boundary contamination.
inline constexpr double kBoundaryWarnFraction = 0.01;

struct ConvolveStats {
    double boundary_fraction = 0.0;
    bool boundary_warning = false;
};

enum class PadKernel : int {
    riesz = 0,  // 1/|d|
    x1, x2, x3,           // d_j / |d|
    eta11, eta22, eta33,  // delta_jk/|d| - d_j d_k/|d|^3
    eta12, eta13, eta23,
};

PadKernel eta_kernel(int j, int k);

/// Analytic cell average of 1/|x| over a cube of side h centered at the
/// origin (closed form via the rectangular-prism potential).
double cell_average_inv_r(double h);

/// Discrete kernel value at displacement d (grid spacing h). The singular
/// cell d = 0 carries the analytic cell average for riesz, 0 for the odd
/// x-kernels, (2/3) of the riesz average for eta diagonals and 0 for eta
/// off-diagonals, so the discrete trace of eta equals 2x the riesz kernel
/// everywhere. Shared verbatim by the FFT fast path and the brute-force
/// oracles.
double free_kernel_value(PadKernel k, Vec3 d, double h);

/// Zero-padded (doubled grid) discrete convolution integral
/// out(x) = sum_y kernel(x - y) f(y) h^3 with no periodic wraparound.
RealField convolve_free(const RealField& f, PadKernel kernel, ConvolveStats* stats = nullptr);

/// Forward transform of a field on the doubled grid, reusable across several
/// kernels (the interaction functionals convolve one density many ways).
struct PaddedSpectrum {
    Grid grid;
    std::vector<cplx> data;
};
PaddedSpectrum padded_spectrum(const RealField& f);
RealField convolve_padded(const PaddedSpectrum& fhat, PadKernel kernel);

/// Convolution with the bare kernel 1/|x - y| (no Riesz constant).
RealField riesz_convolve(const RealField& f, ConvolveStats* stats = nullptr);

/// out_j(x) = sum_y (x - y)_j / |x - y| f(y) h^3.
RealVectorField x_operator(const RealField& f, ConvolveStats* stats = nullptr);

/// sum_{jk} <F_jk | eta_jk * g> for symmetric F.
double eta_pairing(const SymTensorField& f, const RealField& g, ConvolveStats* stats = nullptr);

/// out_j = sum_k eta_jk * p_k.
RealVectorField eta_apply(const RealVectorField& p, ConvolveStats* stats = nullptr);

}  // namespace mnls

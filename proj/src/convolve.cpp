#include "mnls/convolve.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "mnls/fft.hpp"
#include "mnls/integrate.hpp"

namespace mnls {

PadKernel eta_kernel(int j, int k) {
    if (j == k) return static_cast<PadKernel>(static_cast<int>(PadKernel::eta11) + j);
    int a = std::min(j, k), b = std::max(j, k);
    if (a == 0) return b == 1 ? PadKernel::eta12 : PadKernel::eta13;
    return PadKernel::eta23;
}

double cell_average_inv_r(double h) {
    static const double c = 6.0 * std::log((1.0 + std::sqrt(3.0)) / std::sqrt(2.0)) - M_PI / 2.0;
    return c / h;
}

double free_kernel_value(PadKernel k, Vec3 d, double h) {
    const double r = norm(d);
    const int id = static_cast<int>(k);
    if (r == 0.0) {
        if (k == PadKernel::riesz) return cell_average_inv_r(h);
        if (id >= static_cast<int>(PadKernel::eta11) && id <= static_cast<int>(PadKernel::eta33))
            return (2.0 / 3.0) * cell_average_inv_r(h);
        return 0.0;  // odd kernels and eta off-diagonals average to zero over the cell
    }
    switch (k) {
        case PadKernel::riesz:
            return 1.0 / r;
        case PadKernel::x1:
        case PadKernel::x2:
        case PadKernel::x3:
            return d[id - static_cast<int>(PadKernel::x1)] / r;
        default: {
            int j, kk;
            switch (k) {
                case PadKernel::eta11: j = 0; kk = 0; break;
                case PadKernel::eta22: j = 1; kk = 1; break;
                case PadKernel::eta33: j = 2; kk = 2; break;
                case PadKernel::eta12: j = 0; kk = 1; break;
                case PadKernel::eta13: j = 0; kk = 2; break;
                default:               j = 1; kk = 2; break;
            }
            const double delta = (j == kk) ? 1.0 : 0.0;
            return delta / r - d[j] * d[kk] / (r * r * r);
        }
    }
}

namespace {

struct SpectrumKey {
    int n;
    std::uint64_t lbits;
    int kernel;
    bool operator<(const SpectrumKey& o) const {
        return std::tie(n, lbits, kernel) < std::tie(o.n, o.lbits, o.kernel);
    }
};

using Spectrum = std::vector<cplx>;

// DFT of the kernel sampled on the doubled (2N)^3 displacement grid.
std::shared_ptr<const Spectrum> kernel_spectrum(const Grid& g, PadKernel kernel) {
    static std::map<SpectrumKey, std::shared_ptr<const Spectrum>> cache;
    static std::mutex mutex;

    SpectrumKey key{g.n, std::bit_cast<std::uint64_t>(g.box_half_length),
                    static_cast<int>(kernel)};
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    const int n = g.n, np = 2 * g.n;
    const double h = g.spacing();
    const std::int64_t mp = static_cast<std::int64_t>(np) * np * np;
    std::vector<cplx> karr(mp);
    for (int w3 = 0; w3 < np; ++w3)
        for (int w2 = 0; w2 < np; ++w2)
            for (int w1 = 0; w1 < np; ++w1) {
                const int d1 = w1 < n ? w1 : w1 - np;
                const int d2 = w2 < n ? w2 : w2 - np;
                const int d3 = w3 < n ? w3 : w3 - np;
                const Vec3 d{d1 * h, d2 * h, d3 * h};
                karr[(static_cast<std::int64_t>(w3) * np + w2) * np + w1] =
                    cplx{free_kernel_value(kernel, d, h), 0.0};
            }
    auto spec = std::make_shared<Spectrum>(mp);
    Fft3d::plan_for(np, np, np).forward(karr.data(), spec->data());
    cache[key] = spec;
    return spec;
}

void fill_stats(const RealField& f, ConvolveStats* stats) {
    if (!stats) return;
    stats->boundary_fraction = boundary_mass_fraction(f, 2);
    stats->boundary_warning = stats->boundary_fraction > kBoundaryWarnFraction;
}

std::vector<cplx> pad_forward(const RealField& f) {
    const Grid& g = f.grid;
    const int n = g.n, np = 2 * n;
    const std::int64_t mp = static_cast<std::int64_t>(np) * np * np;
    std::vector<cplx> pad(mp, cplx{0.0, 0.0});
    for (int i3 = 0; i3 < n; ++i3)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1)
                pad[(static_cast<std::int64_t>(i3) * np + i2) * np + i1] =
                    cplx{f.at(i1, i2, i3), 0.0};
    std::vector<cplx> out(mp);
    Fft3d::plan_for(np, np, np).forward(pad.data(), out.data());
    return out;
}

RealField extract_scaled(const Grid& g, const std::vector<cplx>& padded) {
    const int n = g.n, np = 2 * n;
    const double vol = g.cell_volume();
    RealField out(g);
    for (int i3 = 0; i3 < n; ++i3)
        for (int i2 = 0; i2 < n; ++i2)
            for (int i1 = 0; i1 < n; ++i1)
                out.at(i1, i2, i3) =
                    vol * padded[(static_cast<std::int64_t>(i3) * np + i2) * np + i1].real();
    return out;
}

RealField convolve_with_spectrum(const Grid& g, const std::vector<cplx>& fhat,
                                 const Spectrum& khat) {
    const int np = 2 * g.n;
    const std::int64_t mp = static_cast<std::int64_t>(np) * np * np;
    std::vector<cplx> prod(mp);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < mp; ++i) prod[i] = fhat[i] * khat[i];
    std::vector<cplx> conv(mp);
    Fft3d::plan_for(np, np, np).inverse(prod.data(), conv.data());
    return extract_scaled(g, conv);
}

}  // namespace

RealField convolve_free(const RealField& f, PadKernel kernel, ConvolveStats* stats) {
    fill_stats(f, stats);
    auto fhat = pad_forward(f);
    return convolve_with_spectrum(f.grid, fhat, *kernel_spectrum(f.grid, kernel));
}

PaddedSpectrum padded_spectrum(const RealField& f) {
    return PaddedSpectrum{f.grid, pad_forward(f)};
}

RealField convolve_padded(const PaddedSpectrum& fhat, PadKernel kernel) {
    return convolve_with_spectrum(fhat.grid, fhat.data, *kernel_spectrum(fhat.grid, kernel));
}

RealField riesz_convolve(const RealField& f, ConvolveStats* stats) {
    return convolve_free(f, PadKernel::riesz, stats);
}

RealVectorField x_operator(const RealField& f, ConvolveStats* stats) {
    fill_stats(f, stats);
    auto fhat = pad_forward(f);
    RealVectorField out(f.grid);
    for (int j = 0; j < 3; ++j) {
        PadKernel k = static_cast<PadKernel>(static_cast<int>(PadKernel::x1) + j);
        out[j] = convolve_with_spectrum(f.grid, fhat, *kernel_spectrum(f.grid, k));
    }
    return out;
}

double eta_pairing(const SymTensorField& f, const RealField& g, ConvolveStats* stats) {
    fill_stats(g, stats);
    auto ghat = pad_forward(g);
    double total = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int k = j; k < 3; ++k) {
            RealField conv = convolve_with_spectrum(g.grid, ghat, *kernel_spectrum(g.grid, eta_kernel(j, k)));
            const double pair = inner(f(j, k), conv);
            total += (j == k) ? pair : 2.0 * pair;
        }
    return total;
}

RealVectorField eta_apply(const RealVectorField& p, ConvolveStats* stats) {
    const Grid& g = p.grid();
    if (stats) {
        // worst component drives the warning
        ConvolveStats s{};
        for (int k = 0; k < 3; ++k) {
            ConvolveStats sk{};
            fill_stats(p[k], &sk);
            if (sk.boundary_fraction > s.boundary_fraction) s = sk;
        }
        *stats = s;
    }
    std::array<std::vector<cplx>, 3> phat;
    for (int k = 0; k < 3; ++k) phat[k] = pad_forward(p[k]);

    const int np = 2 * g.n;
    const std::int64_t mp = static_cast<std::int64_t>(np) * np * np;
    RealVectorField out(g);
    for (int j = 0; j < 3; ++j) {
        std::vector<cplx> acc(mp, cplx{0.0, 0.0});
        for (int k = 0; k < 3; ++k) {
            const Spectrum& khat = *kernel_spectrum(g, eta_kernel(j, k));
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < mp; ++i) acc[i] += khat[i] * phat[k][i];
        }
        std::vector<cplx> conv(mp);
        Fft3d::plan_for(np, np, np).inverse(acc.data(), conv.data());
        out[j] = extract_scaled(g, conv);
    }
    return out;
}

}  // namespace mnls

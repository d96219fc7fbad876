#pragma once

#include <complex>
#include <cstdint>

#include "mnls/field.hpp"

namespace mnls {

/// Cached 3D complex FFTs (FFTW backend). Plans are created once per size
/// with FFTW_ESTIMATE and executed serially, so transforms are bitwise
/// reproducible across runs and independent of the thread count.
class Fft3d {
  public:
    static const Fft3d& plan_for(int n1, int n2, int n3);
    static const Fft3d& plan_for(const Grid& g) { return plan_for(g.n, g.n, g.n); }

    // out = unnormalized forward DFT of in (size n1*n2*n3, x1 fastest).
    void forward(const cplx* in, cplx* out) const;
    // out = backward DFT of in, divided by the total mode count.
    void inverse(const cplx* in, cplx* out) const;

    std::int64_t size() const { return m_; }

    ~Fft3d();
    Fft3d(const Fft3d&) = delete;
    Fft3d& operator=(const Fft3d&) = delete;

  private:
    Fft3d(int n1, int n2, int n3);

    struct Impl;
    Impl* impl_;
    std::int64_t m_ = 0;
};

ComplexField fft_forward(const ComplexField& f);
ComplexField fft_inverse(const ComplexField& f);

}  // namespace mnls

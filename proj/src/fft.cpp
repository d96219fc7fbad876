#include "mnls/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace mnls {

struct Fft3d::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    std::int64_t m = 0;
    mutable std::mutex exec_mutex;
};

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Fft3d::Fft3d(int n1, int n2, int n3) : impl_(new Impl) {
    m_ = static_cast<std::int64_t>(n1) * n2 * n3;
    impl_->m = m_;
    impl_->in = fftw_alloc_complex(static_cast<size_t>(m_));
    impl_->out = fftw_alloc_complex(static_cast<size_t>(m_));
    if (!impl_->in || !impl_->out) throw std::bad_alloc();
    // FFTW is row-major with the last dimension fastest; our layout has x1
    // fastest, so axis 1 maps to FFTW's last dimension.
    impl_->fwd = fftw_plan_dft_3d(n3, n2, n1, impl_->in, impl_->out, FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->bwd = fftw_plan_dft_3d(n3, n2, n1, impl_->in, impl_->out, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("fftw plan creation failed");
}

Fft3d::~Fft3d() {
    if (impl_) {
        fftw_destroy_plan(impl_->fwd);
        fftw_destroy_plan(impl_->bwd);
        fftw_free(impl_->in);
        fftw_free(impl_->out);
        delete impl_;
    }
}

const Fft3d& Fft3d::plan_for(int n1, int n2, int n3) {
    static std::map<std::tuple<int, int, int>, std::unique_ptr<Fft3d>> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto key = std::make_tuple(n1, n2, n3);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::unique_ptr<Fft3d>(new Fft3d(n1, n2, n3))).first;
    return *it->second;
}

// std::complex<double> is layout-compatible with fftw_complex (double[2]).
void Fft3d::forward(const cplx* in, cplx* out) const {
    std::lock_guard<std::mutex> lock(impl_->exec_mutex);
    std::memcpy(impl_->in, reinterpret_cast<const double*>(in),
                sizeof(cplx) * static_cast<size_t>(m_));
    fftw_execute(impl_->fwd);
    std::memcpy(reinterpret_cast<double*>(out), impl_->out,
                sizeof(cplx) * static_cast<size_t>(m_));
}

void Fft3d::inverse(const cplx* in, cplx* out) const {
    std::lock_guard<std::mutex> lock(impl_->exec_mutex);
    std::memcpy(impl_->in, reinterpret_cast<const double*>(in),
                sizeof(cplx) * static_cast<size_t>(m_));
    fftw_execute(impl_->bwd);
    const double scale = 1.0 / static_cast<double>(m_);
    for (std::int64_t i = 0; i < m_; ++i) {
        out[i] = cplx{impl_->out[i][0] * scale, impl_->out[i][1] * scale};
    }
}

ComplexField fft_forward(const ComplexField& f) {
    ComplexField out(f.grid);
    Fft3d::plan_for(f.grid).forward(f.v.data(), out.v.data());
    return out;
}

ComplexField fft_inverse(const ComplexField& f) {
    ComplexField out(f.grid);
    Fft3d::plan_for(f.grid).inverse(f.v.data(), out.v.data());
    return out;
}

}  // namespace mnls

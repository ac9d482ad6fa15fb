#include "antbif/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace antbif {

namespace {

// FFTW planning is not thread safe; execution is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

constexpr unsigned plan_flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

}  // namespace

void fft1(cplx* data, int n, int sign)
{
    static std::map<std::pair<int, int>, fftw_plan> cache;
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        auto it = cache.find({n, sign});
        if (it == cache.end()) {
            std::vector<cplx> tmp(n);
            plan = fftw_plan_dft_1d(n, as_fftw(tmp.data()), as_fftw(tmp.data()),
                                    sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, plan_flags);
            cache.emplace(std::make_pair(n, sign), plan);
        } else {
            plan = it->second;
        }
    }
    fftw_execute_dft(plan, as_fftw(data), as_fftw(data));
}

struct Fft3::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

Fft3::Fft3(int n1, int n2, int n3) : impl_(std::make_unique<Impl>())
{
    std::vector<cplx> tmp(static_cast<size_t>(n1) * n2 * n3);
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl_->fwd = fftw_plan_dft_3d(n1, n2, n3, as_fftw(tmp.data()), as_fftw(tmp.data()), FFTW_FORWARD, plan_flags);
    impl_->bwd = fftw_plan_dft_3d(n1, n2, n3, as_fftw(tmp.data()), as_fftw(tmp.data()), FFTW_BACKWARD, plan_flags);
}

Fft3::~Fft3()
{
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(impl_->fwd);
    fftw_destroy_plan(impl_->bwd);
}

void Fft3::forward(cplx* data) const { fftw_execute_dft(impl_->fwd, as_fftw(data), as_fftw(data)); }
void Fft3::backward(cplx* data) const { fftw_execute_dft(impl_->bwd, as_fftw(data), as_fftw(data)); }

struct FftX::Impl {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

FftX::FftX(int n1, int n2, int n3) : impl_(std::make_unique<Impl>())
{
    std::vector<cplx> tmp(static_cast<size_t>(n1) * n2 * n3);
    int dims[2] = {n1, n2};
    std::lock_guard<std::mutex> lock(planner_mutex());
    impl_->fwd = fftw_plan_many_dft(2, dims, n3, as_fftw(tmp.data()), nullptr, n3, 1,
                                    as_fftw(tmp.data()), nullptr, n3, 1, FFTW_FORWARD, plan_flags);
    impl_->bwd = fftw_plan_many_dft(2, dims, n3, as_fftw(tmp.data()), nullptr, n3, 1,
                                    as_fftw(tmp.data()), nullptr, n3, 1, FFTW_BACKWARD, plan_flags);
}

FftX::~FftX()
{
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(impl_->fwd);
    fftw_destroy_plan(impl_->bwd);
}

void FftX::forward(cplx* data) const { fftw_execute_dft(impl_->fwd, as_fftw(data), as_fftw(data)); }
void FftX::backward(cplx* data) const { fftw_execute_dft(impl_->bwd, as_fftw(data), as_fftw(data)); }

}  // namespace antbif

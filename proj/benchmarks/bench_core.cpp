#include <benchmark/benchmark.h>

#include "antbif/coefficients.hpp"
#include "antbif/pde.hpp"
#include "antbif/theta.hpp"

using namespace antbif;

namespace {

ModelParams params()
{
    ModelParams p;
    p.sigma_x = 0.02;
    p.sigma_theta = 0.1;
    return p;
}

void BM_resolvent(benchmark::State& st)
{
    const ModelParams p = params();
    const int n = static_cast<int>(st.range(0));
    const ThetaFun rhs = multiplier_dB({1, 0}, p, n);
    for (auto _ : st)
        benchmark::DoNotOptimize(resolvent_solve({1, 0}, p.sigma_theta, rhs, p));
}
BENCHMARK(BM_resolvent)->Arg(64)->Arg(512)->Arg(4096);

void BM_bifurcation_report(benchmark::State& st)
{
    const ModelParams p = params();
    for (auto _ : st)
        benchmark::DoNotOptimize(bifurcation_report(p, 1));
}
BENCHMARK(BM_bifurcation_report)->Unit(benchmark::kMillisecond);

void BM_rhs(benchmark::State& st)
{
    const ModelParams p = params();
    const int n = static_cast<int>(st.range(0));
    const GridDims d{n, n, 2 * n};
    Dynamics dyn(p, 40.0, d);
    const auto F = dyn.to_spectral(Field(d, 1.0 / two_pi));
    std::vector<cplx> out;
    for (auto _ : st)
        dyn.rhs(F, out);
}
BENCHMARK(BM_rhs)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_step(benchmark::State& st)
{
    const ModelParams p = params();
    const GridDims d{32, 32, 64};
    Dynamics dyn(p, 40.0, d);
    auto F = dyn.to_spectral(Field(d, 1.0 / two_pi));
    const Scheme s = st.range(0) ? Scheme::imex_linear : Scheme::imex_diffusion;
    for (auto _ : st)
        dyn.step(F, 0.01, s);
}
BENCHMARK(BM_step)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

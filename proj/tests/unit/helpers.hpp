#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "antbif/field.hpp"
#include "antbif/params.hpp"
#include "antbif/theta.hpp"

namespace testing {

using antbif::cplx;

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Naive DFT coefficient (1/N) sum g_j e^{-i m theta_j}.
inline cplx dft_mode(const antbif::ThetaFun& g, int m)
{
    const int n = g.size();
    cplx s = 0.0;
    for (int j = 0; j < n; ++j)
        s += g[j] * std::polar(1.0, -m * antbif::two_pi * j / n);
    return s / static_cast<double>(n);
}

// Smooth positive density with a handful of random low modes.
inline antbif::Field random_bandlimited(const antbif::GridDims& d, unsigned seed, double amp = 0.02)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    struct Term {
        int a, b, n;
        double c, ph;
    };
    std::vector<Term> terms;
    for (int i = 0; i < 8; ++i)
        terms.push_back({static_cast<int>(u(rng) * 3), static_cast<int>(u(rng) * 3), static_cast<int>(u(rng) * 4),
                         amp * u(rng), antbif::pi * u(rng)});
    return antbif::Field::sample(d, [&](double x1, double x2, double th) {
        double s = 1.0 / antbif::two_pi;
        for (const auto& t : terms)
            s += t.c * std::cos(antbif::two_pi * (t.a * x1 + t.b * x2) + t.n * th + t.ph);
        return s;
    });
}

inline antbif::ModelParams dyn_params(double tau = 0.0)
{
    antbif::ModelParams p;
    p.sigma_x = 0.02;
    p.sigma_theta = 0.1;
    p.tau = tau;
    return p;
}

}  // namespace testing

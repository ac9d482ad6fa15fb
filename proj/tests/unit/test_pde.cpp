#include <doctest.h>

#include "antbif/coefficients.hpp"
#include "antbif/errors.hpp"
#include "antbif/linearize.hpp"
#include "antbif/pde.hpp"
#include "antbif/spectrum.hpp"
#include "helpers.hpp"

using namespace antbif;
using testing::random_bandlimited;

namespace {

const GridDims small{16, 16, 32};

double max_diff(const Field& a, const Field& b) { return (a - b).max_abs(); }

Field uniform(const GridDims& d) { return Field(d, 1.0 / two_pi); }

Field run(Field f, double chi, const ModelParams& p, double dt, int steps, Scheme s)
{
    Dynamics dyn(p, chi, f.dims());
    auto F = dyn.to_spectral(f);
    for (int i = 0; i < steps; ++i)
        dyn.step(F, dt, s);
    return dyn.to_physical(F);
}

}  // namespace

TEST_SUITE("pde-dynamics")
{
    TEST_CASE("chemical solve inverts gamma - sigma_c Laplacian")
    {
        ModelParams p;
        p.gamma = 0.7;
        p.sigma_c = 0.3;
        const int n = 8;
        std::vector<double> rho(n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                rho[a * n + b] = 1.0 + 0.4 * std::cos(two_pi * (a + 2.0 * b) / n) + 0.2 * std::sin(two_pi * 2.0 * a / n);
        const std::vector<double> c = chemical_solve(rho, n, n, p);
        // Laplacian by a direct double sum over the resolved modes
        double worst = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                cplx lap = 0.0;
                for (int l1 = -3; l1 <= 3; ++l1)
                    for (int l2 = -3; l2 <= 3; ++l2) {
                        cplx ch = 0.0;
                        for (int x = 0; x < n; ++x)
                            for (int y = 0; y < n; ++y)
                                ch += c[x * n + y] * std::polar(1.0, -two_pi * (l1 * x + l2 * y) / n);
                        ch /= static_cast<double>(n * n);
                        lap += -4 * pi * pi * (l1 * l1 + l2 * l2) * ch * std::polar(1.0, two_pi * (l1 * a + l2 * b) / n);
                    }
                worst = std::max(worst, std::abs(p.gamma * c[a * n + b] - p.sigma_c * lap.real() - rho[a * n + b]));
            }
        CHECK(worst < 1e-11);
    }

    TEST_CASE("uniform state is stationary and the flux conserves mass")
    {
        const ModelParams p = testing::dyn_params(0.5);
        CHECK(rhs_F(uniform(small), 40.0, p).max_abs() < 1e-14);
        const Field r = rhs_F(random_bandlimited(small, 21, 0.03), 40.0, p);
        CHECK(std::abs(r.mass()) < 1e-12 * std::max(1.0, r.max_abs()));
    }

    TEST_CASE("linearisation about the uniform state is the mode operator")
    {
        const ModelParams p = testing::dyn_params(0.3);
        const GridDims d{8, 8, 64};
        const double chi = 35.0;
        const IVec2 kv{1, -1};
        const ThetaFun g = ThetaFun::sample(d.nt, [](double t) { return cplx(std::cos(t), 0.5 * std::sin(2 * t)); });
        const Field v = inverse_partial_fourier({{kv, g}, {-kv, g.conj()}}, d);
        const Field dd = directional_derivative(uniform(d), v, chi, p);
        const Eigen::VectorXcd want = assemble_mode_operator(kv, chi, p.sigma_theta, p, 16).matrix * mode_vector(g, 16);
        const Eigen::VectorXcd have = mode_vector(partial_fourier(dd, kv), 16);
        CHECK((have - want).norm() < 1e-8 * want.norm());
    }

    TEST_CASE("implicit diffusion of a theta mode")
    {
        const ModelParams p = testing::dyn_params();
        const double eps = 1e-3, dt = 0.01;
        const Field f = Field::sample(small, [&](double, double, double t) { return 1 / two_pi + eps * std::cos(3 * t); });
        const Field g = step_imex(f, 0.0, p, dt, Scheme::imex_diffusion);
        const double factor = 1.0 / (1.0 + dt * p.sigma_theta * 9.0);
        CHECK(partial_fourier(g, {0, 0}).modes()[small.nt / 2 + 3].real() == doctest::Approx(eps / 2 * factor).epsilon(1e-12));
    }

    TEST_CASE("mass drift per step")
    {
        const ModelParams p = testing::dyn_params(0.5);
        const Field f = random_bandlimited(small, 31, 0.03);
        for (Scheme s : {Scheme::imex_diffusion, Scheme::imex_linear}) {
            const Field g = step_imex(f, 25.0, p, 0.01, s);
            CHECK(std::abs(g.mass() - f.mass()) < 1e-14 * f.mass());
        }
    }

    TEST_CASE("first order in dt")
    {
        const ModelParams p = testing::dyn_params(0.2);
        const Field f0 = random_bandlimited(small, 41, 0.02);
        const double T = 0.16, chi = 30.0;
        const Field ref = run(f0, chi, p, T / 320, 320, Scheme::imex_diffusion);
        double prev = 0.0;
        for (int n : {10, 20, 40}) {
            const double err = max_diff(run(f0, chi, p, T / n, n, Scheme::imex_diffusion), ref);
            if (prev > 0.0)
                CHECK(prev / err == doctest::Approx(2.0).epsilon(0.2));
            prev = err;
        }
    }

    TEST_CASE("symmetries commute with time stepping")
    {
        const ModelParams p = testing::dyn_params(0.5);
        const Field f0 = random_bandlimited(small, 51, 0.02);
        const double chi = 28.0, dt = 0.01;
        for (Scheme s : {Scheme::imex_diffusion, Scheme::imex_linear}) {
            CHECK(max_diff(run(swap(f0), chi, p, dt, 100, s), swap(run(f0, chi, p, dt, 100, s))) < 1e-9);
            CHECK(max_diff(run(antipodal_reflect(f0), chi, p, dt, 100, s),
                           antipodal_reflect(run(f0, chi, p, dt, 100, s))) < 1e-9);
        }
    }

    TEST_CASE("stability bound is enforced")
    {
        const ModelParams p = testing::dyn_params();
        Dynamics dyn(p, 10.0, small);
        auto F = dyn.to_spectral(uniform(small));
        const double bound = dyn.max_stable_dt(Scheme::imex_diffusion);
        CHECK(bound == doctest::Approx(0.5 * std::min(1.0 / 16 / p.lambda, 2 * p.sigma_x / (p.lambda * p.lambda))));
        CHECK_THROWS_AS(dyn.step(F, 2 * bound, Scheme::imex_diffusion), ValidationError);
        CHECK_NOTHROW(dyn.step(F, 2 * bound, Scheme::imex_linear));
    }

    TEST_CASE("seeds")
    {
        const ModelParams p = testing::dyn_params();
        const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, small.nt);
        const Field lane = seed_initial(SeedKind::lane, 0.05, &kb, small);
        const Field spot = seed_initial(SeedKind::spot, 0.05, &kb, small);
        for (int a = 0; a < small.n1; ++a)
            for (int b = 0; b < small.n2; ++b)
                for (int j = 0; j < small.nt; ++j)
                    CHECK(lane(a, b, j) == doctest::Approx(lane(a, 0, j)).epsilon(1e-13));
        CHECK(max_diff(swap(spot), spot) < 1e-12);
        CHECK(max_diff(antipodal_reflect(spot), spot) < 1e-12);
        CHECK(max_diff(antipodal_reflect(lane), lane) < 1e-12);
        CHECK(lane.mass() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(max_diff(seed_initial(SeedKind::uniform, 0.0, nullptr, small), uniform(small)) == 0.0);
        CHECK_THROWS_AS(seed_initial(SeedKind::spot, 100.0, &kb, small), ValidationError);
        CHECK_THROWS_AS(seed_from_string("blob"), ValidationError);
    }

    TEST_CASE("below chi_1 every seed relaxes to the uniform state")
    {
        const ModelParams p = testing::dyn_params();
        const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, small.nt);
        SolverConfig sc;
        sc.dims = small;
        sc.scheme = Scheme::imex_linear;
        sc.dt = 0.5;
        sc.residual_tol = 1e-11;
        sc.symmetry = Symmetry::spot;
        const EvolveResult r = evolve_to_stationary(seed_initial(SeedKind::spot, 0.05, &kb, small), 0.6 * kb.chi_k, p, sc, &kb);
        CHECK(r.converged);
        CHECK(max_diff(r.final_field, uniform(small)) < 1e-8);
        CHECK(std::abs(r.mass.back() - 1.0) < 1e-12);
    }

    TEST_CASE("slightly above chi_1 the spot seed settles on a stationary spot")
    {
        const ModelParams p = testing::dyn_params();
        const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, small.nt);
        SolverConfig sc;
        sc.dims = small;
        sc.scheme = Scheme::imex_linear;
        sc.dt = 0.5;
        sc.t_max = 1000.0;
        sc.symmetry = Symmetry::spot;
        const EvolveResult r = evolve_to_stationary(seed_initial(SeedKind::spot, 0.05, &kb, small), 1.005 * kb.chi_k, p, sc, &kb);
        CHECK(r.converged);
        CHECK(r.residual.back() < 1e-6);
        CHECK(amplitude_mode(r.final_field, kb) > 0.05);
        CHECK(max_diff(swap(r.final_field), r.final_field) < 1e-8);
        CHECK(rhs_F(r.final_field, 1.005 * kb.chi_k, p).max_abs() < 1e-6);
    }

    TEST_CASE("diagnostics")
    {
        const ModelParams p = testing::dyn_params();
        const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, small.nt);
        const Field f = uniform(small) + 0.01 * kb.phi1.to_field(small);
        CHECK(amplitude_mode(f, kb) == doctest::Approx(0.01).epsilon(1e-8));
        CHECK(amplitude_l2(uniform(small)) < 1e-15);
        CHECK(amplitude_mode(uniform(small), kb) < 1e-15);
    }
}

#include <doctest.h>

#include <sstream>

#include "antbif/appendix.hpp"
#include "antbif/errors.hpp"
#include "antbif/field.hpp"
#include "antbif/pde.hpp"
#include "helpers.hpp"

using namespace antbif;
using testing::random_bandlimited;

namespace {

double max_diff(const Field& a, const Field& b) { return (a - b).max_abs(); }

const GridDims small{16, 16, 32};

}  // namespace

TEST_SUITE("field-symmetry")
{
    TEST_CASE("mass, norms and arithmetic")
    {
        const Field one(small, 1.0 / two_pi);
        CHECK(one.mass() == doctest::Approx(1.0).epsilon(1e-15));
        const Field f = random_bandlimited(small, 3);
        CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(inner(f, one) == doctest::Approx(f.mass() / two_pi).epsilon(1e-14));
        CHECK(max_diff(2.0 * f - f, f) < 1e-16);
    }

    TEST_CASE("binary snapshot round trip")
    {
        const Field f = random_bandlimited(small, 5);
        std::stringstream ss;
        f.write_binary(ss);
        const Field g = Field::read_binary(ss);
        CHECK(g.dims() == f.dims());
        CHECK(max_diff(f, g) == 0.0);
        std::stringstream bad("not a snapshot");
        CHECK_THROWS_AS(Field::read_binary(bad), ValidationError);
    }

    TEST_CASE("partial Fourier transform picks out one x-mode")
    {
        const Field f = Field::sample(small, [](double x1, double x2, double th) {
            return std::cos(two_pi * (2 * x1 - x2)) * std::sin(th) + 0.1;
        });
        const ThetaFun g = partial_fourier(f, {2, -1});
        for (int j = 0; j < small.nt; ++j)
            CHECK(std::abs(g[j] - 0.5 * std::sin(ThetaFun::theta(j, small.nt))) < 1e-14);
        CHECK(partial_fourier(f, {1, 1}).max_abs() < 1e-14);
        const Field back = inverse_partial_fourier({{{2, -1}, g}, {{-2, 1}, partial_fourier(f, {-2, 1})},
                                                    {{0, 0}, partial_fourier(f, {0, 0})}},
                                                   small);
        CHECK(max_diff(back, f) < 1e-14);
    }

    TEST_CASE("reflection and swap are involutions")
    {
        const Field f = random_bandlimited(small, 7);
        CHECK(max_diff(antipodal_reflect(antipodal_reflect(f)), f) < 1e-15);
        CHECK(max_diff(swap(swap(f)), f) < 1e-15);
        const Field g = random_bandlimited(small, 8);
        CHECK(std::abs(inner(swap(f), g) - inner(f, swap(g))) < 1e-12);
        CHECK(std::abs(inner(antipodal_reflect(f), g) - inner(f, antipodal_reflect(g))) < 1e-12);
    }

    TEST_CASE("pointwise definitions of the symmetries")
    {
        auto h = [](double x1, double x2, double th) {
            return std::cos(two_pi * x1 + th) + 0.3 * std::sin(two_pi * 2 * x2 - 2 * th) + 0.1 * std::cos(th);
        };
        const Field f = Field::sample(small, h);
        const Field r = Field::sample(small, [&](double x1, double x2, double th) { return h(-x1, -x2, th + pi); });
        const Field s = Field::sample(small, [&](double x1, double x2, double th) { return h(-x2, -x1, -th - pi / 2); });
        CHECK(max_diff(antipodal_reflect(f), r) < 1e-13);
        CHECK(max_diff(swap(f), s) < 1e-13);
    }

    TEST_CASE("symmetries commute with the equation functional")
    {
        const ModelParams p = testing::dyn_params(0.4);
        const Field f = random_bandlimited(small, 11);
        const double chi = 30.0;
        CHECK(max_diff(rhs_F(swap(f), chi, p), swap(rhs_F(f, chi, p))) < 1e-10);
        CHECK(max_diff(rhs_F(antipodal_reflect(f), chi, p), antipodal_reflect(rhs_F(f, chi, p))) < 1e-10);
    }

    TEST_CASE("kernel basis")
    {
        const ModelParams p = testing::dyn_params(0.2);
        const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, 128);
        CHECK(kb.chi_k == doctest::Approx(two_pi / compute_U({1, 0}, p.sigma_theta, p, 512).integral().real()).epsilon(1e-10));
        CHECK(kb.pairing == doctest::Approx(pairing_phi_psi_quadrature(p, 1, p.sigma_theta, 128)).epsilon(1e-12));
        CHECK(kb.n_k * kb.pairing == doctest::Approx(1.0));
        CHECK(kb.max_tail < 1e-8);

        const Field phi1 = kb.phi1.to_field(small), phi2 = kb.phi2.to_field(small);
        CHECK(max_diff(swap(phi1), phi2) < 1e-12);
        CHECK(max_diff(antipodal_reflect(phi1), phi1) < 1e-12);
        // phi1 is x2-independent and real
        for (int a = 0; a < small.n1; ++a)
            for (int j = 0; j < small.nt; ++j)
                CHECK(phi1(a, 5, j) == doctest::Approx(phi1(a, 0, j)).epsilon(1e-12));
        const ThetaFun u = compute_U({1, 0}, p.sigma_theta, p, 128).resampled(small.nt);
        const ThetaFun g = partial_fourier(phi1, {1, 0});
        for (int j = 0; j < small.nt; ++j)
            CHECK(std::abs(g[j] - u[j]) < 1e-10);
    }

    TEST_CASE("projection Q onto the kernel is idempotent")
    {
        const ModelParams p = testing::dyn_params();
        const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, 64);
        const Field f = random_bandlimited(small, 13);
        const Field q = project_Q(f, kb);
        CHECK(max_diff(project_Q(q, kb), q) < 1e-12);
        const Field phi = kb.phi1.to_field(small) + 0.5 * kb.phi2.to_field(small);
        const auto r = kernel_coordinates(phi, kb);
        CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(max_diff(project_Q(phi, kb), phi) < 1e-10 * phi.max_abs());
        CHECK(inner(f - q, kb.psi1.to_field(small)) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    }

    TEST_CASE("modal products match grid products")
    {
        const ModelParams p = testing::dyn_params(0.3);
        const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, small.nt);
        const ModalField prod = kb.phi1.product(kb.phi2);
        const Field a = prod.to_field(small);
        Field b = kb.phi1.to_field(small);
        const Field c = kb.phi2.to_field(small);
        for (size_t i = 0; i < b.data().size(); ++i)
            b.data()[i] *= c.data()[i];
        CHECK(max_diff(a, b) < 1e-12);
        CHECK(inner(kb.psi1, kb.phi1).real() == doctest::Approx(kb.pairing).epsilon(1e-12));
        CHECK(std::abs(inner(kb.psi1, kb.phi2)) < 1e-14);
    }
}

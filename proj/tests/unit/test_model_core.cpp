#include <doctest.h>

#include "antbif/errors.hpp"
#include "antbif/params.hpp"
#include "helpers.hpp"

using namespace antbif;
using testing::rel;

TEST_SUITE("model-core")
{
    TEST_CASE("sigma_k equals one when sigma_x = lambda / 2pi")
    {
        ModelParams p;
        p.lambda = 1.7;
        p.sigma_x = p.lambda / two_pi;
        const RescaledConstants rc = rescale(p, 1);
        CHECK(rc.sigma_k == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(rc.lambda_k == doctest::Approx(two_pi * 1.7));
    }

    TEST_CASE("hand-evaluated constants at sigma_k = 1")
    {
        ModelParams p;
        p.sigma_x = 1.0 / two_pi;
        const RescaledConstants rc = rescale(p, 1);
        CHECK(rc.z_in == doctest::Approx(-3.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(rc.e_k == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-14));
        const double z = rc.z_in;
        CHECK(rc.f_k == doctest::Approx(2.0 * (1.0 + z * z) / (1.0 - z * z)).epsilon(1e-14));
    }

    TEST_CASE("root product and ranges")
    {
        for (double sk : {1e-4, 0.01, 0.2, 1.0, 7.0}) {
            ModelParams p;
            p.sigma_x = sigma_x_for_sigma_k(p, sk, 2);
            const RescaledConstants rc = rescale(p, 2);
            CHECK(rc.sigma_k == doctest::Approx(sk));
            CHECK(rc.z_in * rc.z_out == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(rc.z_in > -1.0);
            CHECK(rc.z_in < 0.0);
            CHECK(rc.z_out < -1.0);
            CHECK(rc.e_k == doctest::Approx(2.0 / (rc.z_in - rc.z_out)).epsilon(1e-10));
            // the root satisfies its quadratic
            const double q = 2.0 * sk * sk + 1.0;
            CHECK(std::abs(rc.z_in * rc.z_in + 2.0 * q * rc.z_in + 1.0) < 1e-14);
        }
    }

    TEST_CASE("z_in increases toward zero along a dyadic grid")
    {
        double prev = -1.0;
        for (int j = -20; j <= 10; ++j) {
            ModelParams p;
            p.sigma_x = sigma_x_for_sigma_k(p, std::ldexp(1.0, j));
            const double z = rescale(p, 1).z_in;
            CHECK(z > prev);
            prev = z;
        }
        ModelParams p;
        p.sigma_x = sigma_x_for_sigma_k(p, 1e-6);
        CHECK(rescale(p, 1).z_in == doctest::Approx(-1.0).epsilon(1e-5));
    }

    TEST_CASE("small sigma_k keeps digits")
    {
        ModelParams p;
        p.sigma_x = sigma_x_for_sigma_k(p, 1e-5);
        const double z = rescale(p, 1).z_in;
        const long double q = 2.0L * 1e-10L + 1.0L;
        const long double ref = -q + std::sqrt(q * q - 1.0L);
        CHECK(rel(z, static_cast<double>(ref)) < 1e-12);
    }

    TEST_CASE("homogeneity in sigma_x and lambda")
    {
        ModelParams a, b;
        a.sigma_x = 0.03;
        a.lambda = 1.0;
        b.sigma_x = 0.09;
        b.lambda = 3.0;
        CHECK(rescale(a, 3).sigma_k == doctest::Approx(rescale(b, 3).sigma_k).epsilon(1e-15));
    }

    TEST_CASE("elliptic multiplier")
    {
        ModelParams p;
        CHECK(elliptic_multiplier(p, {0, 0}) == p.gamma);
        CHECK(elliptic_multiplier(p, {1, 0}) == doctest::Approx(1.0 + 4.0 * pi * pi));
        const double e1 = elliptic_multiplier(p, {1, 2}), e2 = elliptic_multiplier(p, {2, 4});
        CHECK(e2 - e1 == doctest::Approx(12.0 * pi * pi * 5.0 * p.sigma_c));
    }

    TEST_CASE("validation")
    {
        CHECK_THROWS_AS(rescale(ModelParams{}, 0), ValidationError);
        ModelParams p;
        p.gamma = 0.0;
        CHECK_THROWS_AS(p.validate(), ValidationError);
        p = ModelParams{};
        p.sigma_theta = -1e-3;
        CHECK_THROWS_AS(p.validate(), ValidationError);
        p = ModelParams{};
        p.lambda = NAN;
        CHECK_THROWS_AS(p.validate(), ValidationError);
        p = ModelParams{};
        p.tau = -0.1;
        CHECK_THROWS_AS(p.validate(), ValidationError);
        CHECK_NOTHROW(ModelParams{}.validate());
    }
}

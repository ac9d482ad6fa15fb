#include "antbif/params.hpp"

#include <cmath>
#include <string>

#include "antbif/errors.hpp"

namespace antbif {

void ModelParams::validate() const
{
    auto positive = [](double v, const char* name) {
        require(std::isfinite(v) && v > 0.0, std::string(name) + " must be positive");
    };
    auto nonneg = [](double v, const char* name) {
        require(std::isfinite(v) && v >= 0.0, std::string(name) + " must be non-negative");
    };
    positive(gamma, "gamma");
    positive(sigma_c, "sigma_c");
    positive(sigma_x, "sigma_x");
    positive(lambda, "lambda");
    nonneg(sigma_theta, "sigma_theta");
    nonneg(tau, "tau");
    require(std::isfinite(chi), "chi must be finite");
}

RescaledConstants rescale(const ModelParams& p, int k)
{
    require(k >= 1, "rescale: wave number must be >= 1");
    p.validate();
    RescaledConstants rc;
    rc.k = k;
    rc.lambda_k = two_pi * p.lambda * k;
    rc.sigma_k = two_pi * p.sigma_x * k / p.lambda;
    rc.tau_k = two_pi * p.tau * k;
    rc.e_elliptic = elliptic_multiplier(p, {k, 0});

    const double q = 2.0 * rc.sigma_k * rc.sigma_k + 1.0;
    // q^2 - 1 written as a product to keep digits when sigma_k is small
    const double disc = std::sqrt((q - 1.0) * (q + 1.0));
    rc.z_in = -1.0 / (q + disc);
    rc.z_out = 1.0 / rc.z_in;
    rc.e_k = 1.0 / disc;
    const double z2 = rc.z_in * rc.z_in;
    rc.f_k = 2.0 * (1.0 + z2) / (1.0 - z2);
    return rc;
}

double elliptic_multiplier(const ModelParams& p, const IVec2& kvec)
{
    return p.gamma + 4.0 * pi * pi * norm2(kvec) * p.sigma_c;
}

double sigma_x_for_sigma_k(const ModelParams& p, double sigma_k, int k)
{
    require(sigma_k > 0.0, "sigma_k must be positive");
    return sigma_k * p.lambda / (two_pi * k);
}

}  // namespace antbif

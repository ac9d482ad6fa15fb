#pragma once

#include <array>
#include <complex>
#include <numbers>

namespace antbif {

using cplx = std::complex<double>;
using IVec2 = std::array<int, 2>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline IVec2 operator-(const IVec2& a) { return {-a[0], -a[1]}; }
inline IVec2 operator+(const IVec2& a, const IVec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline IVec2 operator-(const IVec2& a, const IVec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline int norm2(const IVec2& a) { return a[0] * a[0] + a[1] * a[1]; }

struct ModelParams {
    double gamma = 1.0;
    double sigma_c = 1.0;
    double sigma_x = 0.01;
    double sigma_theta = 1e-3;
    double lambda = 1.0;
    double chi = 0.0;
    double tau = 0.0;

    // Throws ValidationError unless gamma, sigma_c, sigma_x, lambda > 0 and
    // sigma_theta, tau >= 0 (all finite).
    void validate() const;
};

// Per wave number constants. z_in is the root of z^2 + 2(2 sigma_k^2 + 1) z + 1
// inside the unit disk.
struct RescaledConstants {
    int k = 1;
    double lambda_k = 0.0;
    double sigma_k = 0.0;
    double tau_k = 0.0;
    double e_elliptic = 0.0;
    double z_in = 0.0;
    double z_out = 0.0;
    double e_k = 0.0;
    double f_k = 0.0;

    double abs_z() const { return -z_in; }
};

RescaledConstants rescale(const ModelParams& p, int k);

// gamma + 4 pi^2 |kvec|^2 sigma_c
double elliptic_multiplier(const ModelParams& p, const IVec2& kvec);

// sigma_x giving the requested sigma_k at wave number k (lambda fixed).
double sigma_x_for_sigma_k(const ModelParams& p, double sigma_k, int k = 1);

}  // namespace antbif

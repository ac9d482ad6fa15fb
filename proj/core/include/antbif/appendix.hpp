#pragma once

#include <array>

#include "antbif/params.hpp"

namespace antbif {

// q2 tau^2 + q1 tau + q0
struct Quadratic {
    double q2 = 0.0, q1 = 0.0, q0 = 0.0;
    double operator()(double t) const { return (q2 * t + q1) * t + q0; }
};

// c[0] + c[1] t + c[2] t^2 + c[3] t^3
struct CubicPoly {
    std::array<double, 4> c{};

    double operator()(double t) const { return ((c[3] * t + c[2]) * t + c[1]) * t + c[0]; }
    double derivative(double t) const { return (3.0 * c[3] * t + 2.0 * c[2]) * t + c[1]; }
    double scale() const;  // largest |coefficient|

    CubicPoly& operator+=(const CubicPoly& o);
    CubicPoly& operator*=(double s);
};

CubicPoly operator+(CubicPoly a, const CubicPoly& b);
CubicPoly operator-(CubicPoly a, const CubicPoly& b);
CubicPoly operator*(double s, CubicPoly a);
// Product of two quadratics; throws if the quartic term does not vanish.
CubicPoly multiply(const Quadratic& a, const Quadratic& b);
CubicPoly as_cubic(const Quadratic& a);

struct Table2 {
    Quadratic aY, gY, aX, gX, bX;
};
Table2 table2(const RescaledConstants& rc);

// Fourier coefficient n of |M_{(k,0)}|^{-power}, power in {2, 4}.
double d_mode(const RescaledConstants& rc, int n, int power);

struct XYModes {
    cplx x, y1, y2;
};
// Modes n (even, |n| >= 2) of X^{k1}, Y^{k1}, Y^{k2} at sigma_theta = 0, closed form.
XYModes xy_modes(const RescaledConstants& rc, int n);

double beta1(double s);
double beta2(double s);

enum class Which { k1, k2 };

// I^{k1} or I^{k2} as a cubic in tau_k (sigma_k, k and E fixed by rc).
CubicPoly I_closed(const RescaledConstants& rc, Which which);

struct SeriesResult {
    double value = 0.0;
    double tail = 0.0;  // geometric bound on the truncated remainder
};
// 16 pi^3 sum_{1<=w<=omega_max} Im(conj(y_w) x_w)/w using xy_modes at the given tau_k.
SeriesResult I_series_oracle(const RescaledConstants& rc, double tau_k, Which which, int omega_max);

// -4 pi^2 int X W dtheta with d_thth W = d_th Y, everything built on an n-point
// theta grid from the inviscid profiles.
double I_quadrature_oracle(const ModelParams& p, int k, Which which, int n);

// <psi^{k1}, phi^{k1}> at sigma_theta = 0.
double pairing_phi_psi_closed(const RescaledConstants& rc);
// int (U^{k1} V^{-k1} + U^{-k1} V^{k1}) dtheta by grid quadrature.
double pairing_phi_psi_quadrature(const ModelParams& p, int k, double sigma_theta, int n);

// Rescaled modes (-4, -2, 0) of d_th B_{k1} (M_{-k1})^2 and the common scale
// pi k lambda_k^2 / (2 E).
std::array<double, 3> m_phipsi_modes(const RescaledConstants& rc);
double m_phipsi_scale(const RescaledConstants& rc);

// J_0(mu) = int U^{k1}_0 with M shifted by mu; complex mu via analytic continuation.
cplx dispersion_J_inviscid(const RescaledConstants& rc, cplx mu);
// Same quantity by quadrature of d_th B / (-mu - M) on an n-point grid.
cplx dispersion_J_quadrature(const ModelParams& p, int k, cplx mu, int n);

}  // namespace antbif

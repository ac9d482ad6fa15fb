#include "antbif/appendix.hpp"

#include <algorithm>
#include <cmath>

#include "antbif/errors.hpp"
#include "antbif/theta.hpp"

namespace antbif {

double CubicPoly::scale() const
{
    double s = 0.0;
    for (double x : c)
        s = std::max(s, std::abs(x));
    return s;
}

CubicPoly& CubicPoly::operator+=(const CubicPoly& o)
{
    for (int i = 0; i < 4; ++i)
        c[i] += o.c[i];
    return *this;
}

CubicPoly& CubicPoly::operator*=(double s)
{
    for (double& x : c)
        x *= s;
    return *this;
}

CubicPoly operator+(CubicPoly a, const CubicPoly& b) { return a += b; }
CubicPoly operator-(CubicPoly a, const CubicPoly& b) { return a += -1.0 * b; }
CubicPoly operator*(double s, CubicPoly a) { return a *= s; }

CubicPoly multiply(const Quadratic& a, const Quadratic& b)
{
    if (a.q2 * b.q2 != 0.0)
        throw ValidationError("multiply: product of quadratics is quartic");
    CubicPoly p;
    p.c[0] = a.q0 * b.q0;
    p.c[1] = a.q0 * b.q1 + a.q1 * b.q0;
    p.c[2] = a.q0 * b.q2 + a.q1 * b.q1 + a.q2 * b.q0;
    p.c[3] = a.q1 * b.q2 + a.q2 * b.q1;
    return p;
}

CubicPoly as_cubic(const Quadratic& a)
{
    CubicPoly p;
    p.c = {a.q0, a.q1, a.q2, 0.0};
    return p;
}

Table2 table2(const RescaledConstants& rc)
{
    const double s = rc.sigma_k;
    const double z = rc.abs_z();
    const double z2 = z * z;
    const double w = (1.0 - z2) * (1.0 - z2);
    Table2 t;
    t.aY = {-s * (1.0 + z2), -(1.0 + z) * (1.0 + z) / 2.0, 2.0 * s * z};
    t.gY = {s * z, (2.0 + z) / 2.0, -2.0 * s};
    t.aX = {0.0, 2.0 * s * w, -4.0 * s * s * z * (1.0 + z) * (1.0 + z) - w};
    t.gX = {0.0, 4.0 * s * z * w, 4.0 * s * s * ((1.0 - z2 * z2) + 4.0 * (z2 + z)) - 2.0 * z * w};
    t.bX = {0.0, -2.0 * s * w * (1.0 + z2), w * (1.0 + z2) - 8.0 * s * s * z2 * (1.0 + z) * (1.0 + z)};
    return t;
}

double d_mode(const RescaledConstants& rc, int n, int power)
{
    require(power == 2 || power == 4, "d_mode: power must be 2 or 4");
    if (n % 2 != 0)
        return 0.0;
    const int an = std::abs(n);
    const double sign = (an / 2) % 2 == 0 ? 1.0 : -1.0;
    const double geo = std::pow(rc.abs_z(), an / 2.0) * 2.0 * sign;
    const double l2 = rc.lambda_k * rc.lambda_k;
    if (power == 2)
        return rc.e_k / l2 * geo;
    return (an + rc.f_k) * rc.e_k * rc.e_k / (l2 * l2) * geo;
}

XYModes xy_modes(const RescaledConstants& rc, int n)
{
    if (n % 2 != 0)
        throw ValidationError("xy_modes: odd modes vanish identically");
    require(std::abs(n) >= 2, "xy_modes: |n| must be >= 2");
    if (n < 0) {
        const XYModes m = xy_modes(rc, -n);
        return {std::conj(m.x), std::conj(m.y1), std::conj(m.y2)};
    }
    const Table2 t = table2(rc);
    const double tk = rc.tau_k;
    const double z = rc.abs_z();
    const double k = rc.k;
    const double E = rc.e_elliptic;
    const double sign = (n / 2) % 2 == 0 ? 1.0 : -1.0;
    const double geo = std::pow(z, (n - 4) / 2.0);

    const double cx = -(pi * k / (2.0 * E * rc.lambda_k)) * rc.e_k * rc.e_k;
    const cplx cy = cplx(0.0, -2.0 * pi * pi * k * k / (E * E * rc.lambda_k)) * rc.e_k * (1.0 - z * z);

    XYModes m;
    m.x = cx * sign * geo * (t.aX(tk) * n + 2.0 / (1.0 - z * z) * t.bX(tk));
    if (n == 2) {
        // Both n = 2 modes of Y carry g^Y; y1_2 = -y2_2 as for every even n.
        m.y2 = -cy * t.gY(tk);
        m.y1 = -m.y2;
    } else {
        m.y1 = cy * sign * geo * t.aY(tk);
        m.y2 = cy * geo * t.aY(tk);
    }
    return m;
}

namespace {

// sum_{m>=2} s^{2m-4} (+-1)^m / m, first six terms
double beta_series(double s, double alt)
{
    const double s2 = s * s;
    double term = 1.0, acc = 0.0;
    for (int m = 2; m < 8; ++m) {
        acc += term * (m % 2 == 0 ? 1.0 : alt) / m;
        term *= s2;
    }
    return acc;
}

}  // namespace

double beta1(double s)
{
    require(s >= 0.0 && s < 1.0, "beta1: argument must lie in [0,1)");
    if (s < 1e-2)
        return beta_series(s, 1.0);
    const double s2 = s * s;
    return -(std::log1p(-s2) + s2) / (s2 * s2);
}

double beta2(double s)
{
    require(s >= 0.0, "beta2: argument must be non-negative");
    if (s < 1e-2)
        return beta_series(s, -1.0);
    const double s2 = s * s;
    return -(std::log1p(s2) - s2) / (s2 * s2);
}

CubicPoly I_closed(const RescaledConstants& rc, Which which)
{
    const Table2 t = table2(rc);
    const double z = rc.abs_z();
    const double k = rc.k;
    const double E = rc.e_elliptic;
    const double pre = -16.0 * std::pow(pi, 6) * k * k * k / (E * E * E * rc.lambda_k * rc.lambda_k) *
                       rc.e_k * rc.e_k * rc.e_k;
    CubicPoly gg = multiply(t.gY, t.gX);
    if (which == Which::k1) {
        const Quadratic inner{0.0, t.aX.q1 + beta1(z) * t.bX.q1, t.aX.q0 + beta1(z) * t.bX.q0};
        return pre * (gg + multiply(t.aY, inner));
    }
    const double r = (1.0 - z * z) / (1.0 + z * z);
    const double b2 = beta2(z);
    const Quadratic inner{0.0, r * t.aX.q1 + b2 * t.bX.q1, r * t.aX.q0 + b2 * t.bX.q0};
    return pre * (multiply(t.aY, inner) - gg);
}

SeriesResult I_series_oracle(const RescaledConstants& rc, double tau_k, Which which, int omega_max)
{
    require(omega_max >= 8, "I_series_oracle: omega_max must be >= 8");
    RescaledConstants r = rc;
    r.tau_k = tau_k;
    auto term = [&](int w) {
        const XYModes m = xy_modes(r, w);
        const cplx y = which == Which::k1 ? m.y1 : m.y2;
        return std::imag(std::conj(y) * m.x) / w;
    };
    SeriesResult out;
    double acc = 0.0;
    for (int w = 2; w <= omega_max; w += 2)
        acc += term(w);
    const int next = omega_max % 2 == 0 ? omega_max + 2 : omega_max + 1;
    // |terms| decay at least like z^w times a linear factor
    out.tail = 16.0 * pi * pi * pi * std::abs(term(next)) * (next + 1.0) / (1.0 - r.abs_z());
    out.value = 16.0 * pi * pi * pi * acc;
    return out;
}

double I_quadrature_oracle(const ModelParams& p, int k, Which which, int n)
{
    const IVec2 k1{k, 0};
    const IVec2 kj = which == Which::k1 ? IVec2{k, 0} : IVec2{0, k};

    const ThetaFun dVm = compute_V(-k1, 0.0, p, n).derivative();
    const ThetaFun dVp = compute_V(k1, 0.0, p, n).derivative();
    const ThetaFun X = multiplier_B(k1, p, n) * dVm + multiplier_B(-k1, p, n) * dVp;

    const ThetaFun Y = multiplier_B(kj, p, n) * compute_U(-kj, 0.0, p, n) +
                       multiplier_B(-kj, p, n) * compute_U(kj, 0.0, p, n);
    // d_thth W = d_th Y  =>  w_m = -i y_m / m, w_0 = 0
    auto ym = Y.modes();
    for (int j = 0; j < n; ++j) {
        const int m = j - n / 2;
        ym[j] = (m == 0 || j == 0) ? cplx(0.0) : cplx(0.0, -1.0) * ym[j] / static_cast<double>(m);
    }
    const ThetaFun W = ThetaFun::from_modes(ym);
    return std::real(-4.0 * pi * pi * integrate_product(X, W));
}

double pairing_phi_psi_closed(const RescaledConstants& rc)
{
    const double z = rc.abs_z();
    const double s = rc.sigma_k;
    const double p1 = 1.0 + z * z - 4.0 * z / (1.0 + z) + 8.0 * s * s * z / (1.0 - z * z);
    const double p0 = 4.0 * s * (1.0 - z) / (1.0 + z);
    return 8.0 * pi * pi * rc.k * rc.e_k * rc.e_k / (rc.e_elliptic * rc.lambda_k * rc.lambda_k) *
           (p1 * rc.tau_k + p0);
}

double pairing_phi_psi_quadrature(const ModelParams& p, int k, double sigma_theta, int n)
{
    const IVec2 k1{k, 0};
    const cplx v = integrate_product(compute_U(k1, sigma_theta, p, n), compute_V(-k1, sigma_theta, p, n)) +
                   integrate_product(compute_U(-k1, sigma_theta, p, n), compute_V(k1, sigma_theta, p, n));
    return v.real();
}

std::array<double, 3> m_phipsi_modes(const RescaledConstants& rc)
{
    const double s = rc.sigma_k;
    const double t = rc.tau_k;
    return {-t / 2.0, -2.0 * s - t + 2.0 * s * s * t, -4.0 * s - t};
}

double m_phipsi_scale(const RescaledConstants& rc)
{
    return pi * rc.k / (2.0 * rc.e_elliptic) * rc.lambda_k * rc.lambda_k;
}

cplx dispersion_J_inviscid(const RescaledConstants& rc, cplx mu)
{
    require(std::isfinite(mu.real()) && std::isfinite(mu.imag()), "dispersion_J_inviscid: mu must be finite");
    const cplx s = rc.sigma_k + mu / rc.lambda_k;
    const cplx q = 2.0 * s * s + 1.0;
    cplx disc = std::sqrt((q - 1.0) * (q + 1.0));
    if (std::abs(disc) < 1e-14)
        throw ValidationError("dispersion_J_inviscid: mu sits on the branch point");
    cplx z = -1.0 / (q + disc);
    if (std::abs(z) > 1.0) {
        disc = -disc;
        z = -1.0 / (q + disc);
    }
    if (std::abs(std::abs(z) - 1.0) < 1e-14)
        throw ValidationError("dispersion_J_inviscid: resolvent does not exist at this mu");
    const cplx e = 1.0 / disc;
    return 4.0 * pi * pi * static_cast<double>(rc.k) * e / (rc.e_elliptic * rc.lambda_k) *
           (1.0 + z - 2.0 * s * z * rc.tau_k);
}

cplx dispersion_J_quadrature(const ModelParams& p, int k, cplx mu, int n)
{
    const IVec2 k1{k, 0};
    const ThetaFun dB = multiplier_dB(k1, p, n);
    const ThetaFun M = multiplier_M(k1, p, n);
    cplx s = 0.0;
    for (int j = 0; j < n; ++j)
        s += dB[j] / (-mu - M[j]);
    return s * (two_pi / n);
}

}  // namespace antbif

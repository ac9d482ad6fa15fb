#include "antbif/theta.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "antbif/errors.hpp"
#include "antbif/fft.hpp"

namespace antbif {

ThetaFun::ThetaFun(int n, cplx fill) : v_(n, fill)
{
    require(n >= 4 && n % 2 == 0, "ThetaFun: grid size must be even and >= 4");
}

ThetaFun ThetaFun::from_values(std::vector<cplx> values)
{
    require(values.size() >= 4 && values.size() % 2 == 0, "ThetaFun: grid size must be even and >= 4");
    ThetaFun g;
    g.v_ = std::move(values);
    return g;
}

ThetaFun ThetaFun::from_modes(const std::vector<cplx>& centred)
{
    const int n = static_cast<int>(centred.size());
    ThetaFun g(n);
    for (int j = 0; j < n; ++j) {
        const int m = j - n / 2;
        g.v_[(m + n) % n] = centred[j];
    }
    fft1(g.v_, +1);
    return g;
}

std::vector<cplx> ThetaFun::modes() const
{
    const int n = size();
    std::vector<cplx> tmp = v_;
    fft1(tmp, -1);
    std::vector<cplx> out(n);
    for (int j = 0; j < n; ++j) {
        const int m = j - n / 2;
        out[j] = tmp[(m + n) % n] / static_cast<double>(n);
    }
    return out;
}

cplx ThetaFun::integral() const
{
    cplx s = 0.0;
    for (const auto& x : v_)
        s += x;
    return s * (two_pi / size());
}

ThetaFun ThetaFun::derivative(int order) const
{
    const int n = size();
    std::vector<cplx> tmp = v_;
    fft1(tmp, -1);
    for (int j = 0; j < n; ++j) {
        const int m = j <= n / 2 ? j : j - n;
        cplx f = std::pow(cplx(0.0, m), order);
        if (j == n / 2 && order % 2 == 1)
            f = 0.0;
        tmp[j] *= f / static_cast<double>(n);
    }
    fft1(tmp, +1);
    return from_values(std::move(tmp));
}

ThetaFun ThetaFun::conj() const
{
    ThetaFun g = *this;
    for (auto& x : g.v_)
        x = std::conj(x);
    return g;
}

ThetaFun ThetaFun::shifted(double omega) const
{
    auto m = modes();
    const int n = size();
    for (int j = 0; j < n; ++j) {
        const int k = j - n / 2;
        m[j] *= std::polar(1.0, -k * omega);
    }
    return from_modes(m);
}

ThetaFun ThetaFun::resampled(int n) const
{
    require(n >= 4 && n % 2 == 0, "resampled: grid size must be even and >= 4");
    const auto m = modes();
    const int n0 = size();
    std::vector<cplx> out(n, 0.0);
    const int lim = std::min(n0, n) / 2;
    for (int k = -lim + 1; k < lim; ++k)
        out[k + n / 2] = m[k + n0 / 2];
    return from_modes(out);
}

double ThetaFun::max_abs() const
{
    double m = 0.0;
    for (const auto& x : v_)
        m = std::max(m, std::abs(x));
    return m;
}

double ThetaFun::l2() const
{
    double s = 0.0;
    for (const auto& x : v_)
        s += std::norm(x);
    return std::sqrt(s * two_pi / size());
}

ThetaFun& ThetaFun::operator+=(const ThetaFun& o)
{
    require(o.size() == size(), "ThetaFun size mismatch");
    for (size_t j = 0; j < v_.size(); ++j)
        v_[j] += o.v_[j];
    return *this;
}

ThetaFun& ThetaFun::operator-=(const ThetaFun& o)
{
    require(o.size() == size(), "ThetaFun size mismatch");
    for (size_t j = 0; j < v_.size(); ++j)
        v_[j] -= o.v_[j];
    return *this;
}

ThetaFun& ThetaFun::operator*=(const ThetaFun& o)
{
    require(o.size() == size(), "ThetaFun size mismatch");
    for (size_t j = 0; j < v_.size(); ++j)
        v_[j] *= o.v_[j];
    return *this;
}

ThetaFun& ThetaFun::operator*=(cplx s)
{
    for (auto& x : v_)
        x *= s;
    return *this;
}

void ThetaFun::write_csv(std::ostream& os) const
{
    os << "theta,re,im\n";
    os.precision(17);
    for (int j = 0; j < size(); ++j)
        os << theta(j, size()) << ',' << v_[j].real() << ',' << v_[j].imag() << '\n';
}

ThetaFun operator+(ThetaFun a, const ThetaFun& b) { return a += b; }
ThetaFun operator-(ThetaFun a, const ThetaFun& b) { return a -= b; }
ThetaFun operator*(ThetaFun a, const ThetaFun& b) { return a *= b; }
ThetaFun operator*(ThetaFun a, cplx s) { return a *= s; }
ThetaFun operator*(cplx s, ThetaFun a) { return a *= s; }
ThetaFun operator-(ThetaFun a) { return a *= -1.0; }

cplx integrate_product(const ThetaFun& f, const ThetaFun& g)
{
    require(f.size() == g.size(), "ThetaFun size mismatch");
    cplx s = 0.0;
    for (int j = 0; j < f.size(); ++j)
        s += f[j] * g[j];
    return s * (two_pi / f.size());
}

ThetaFun multiplier_B(const IVec2& kvec, const ModelParams& p, int n)
{
    require(norm2(kvec) > 0, "multiplier_B: zero wave vector");
    const double E = elliptic_multiplier(p, kvec);
    const double k1 = kvec[0], k2 = kvec[1];
    return ThetaFun::sample(n, [&](double th) {
        const double c = std::cos(th), s = std::sin(th);
        const double vk = c * k1 + s * k2;
        const double vpk = -s * k1 + c * k2;
        return cplx(-4.0 * pi * pi * p.tau * vpk * vk, two_pi * vpk) / E;
    });
}

ThetaFun multiplier_dB(const IVec2& kvec, const ModelParams& p, int n)
{
    require(norm2(kvec) > 0, "multiplier_dB: zero wave vector");
    const double E = elliptic_multiplier(p, kvec);
    const double k1 = kvec[0], k2 = kvec[1];
    return ThetaFun::sample(n, [&](double th) {
        const double c = std::cos(th), s = std::sin(th);
        const double vk = c * k1 + s * k2;
        const double vpk = -s * k1 + c * k2;
        return cplx(-4.0 * pi * pi * p.tau * (vpk * vpk - vk * vk), -two_pi * vk) / E;
    });
}

ThetaFun multiplier_M(const IVec2& kvec, const ModelParams& p, int n)
{
    require(norm2(kvec) > 0, "multiplier_M: zero wave vector");
    const double re = 4.0 * pi * pi * p.sigma_x * norm2(kvec);
    const double k1 = kvec[0], k2 = kvec[1];
    return ThetaFun::sample(n, [&](double th) {
        return cplx(re, two_pi * p.lambda * (std::cos(th) * k1 + std::sin(th) * k2));
    });
}

ThetaFun resolvent_solve(const IVec2& kvec, double sigma_theta, const ThetaFun& rhs, const ModelParams& p,
                         ResolventInfo* info, cplx shift)
{
    require(norm2(kvec) > 0, "resolvent_solve: zero wave vector");
    require(sigma_theta >= 0.0, "resolvent_solve: sigma_theta must be non-negative");
    const int n = rhs.size();

    if (sigma_theta == 0.0) {
        const ThetaFun M = multiplier_M(kvec, p, n);
        ThetaFun u(n);
        for (int j = 0; j < n; ++j)
            u.values()[j] = -rhs[j] / (M[j] + shift);
        if (info)
            info->tail = 0.0;
        return u;
    }

    const double re = 4.0 * pi * pi * p.sigma_x * norm2(kvec);
    // coefficient of e^{+i theta} and e^{-i theta} in 2 pi i lambda v.k
    const cplx up = cplx(0.0, two_pi * p.lambda) * cplx(kvec[0], -kvec[1]) * 0.5;
    const cplx dn = cplx(0.0, two_pi * p.lambda) * cplx(kvec[0], kvec[1]) * 0.5;

    std::vector<cplx> d(n), dl(n - 1), du(n - 1);
    for (int j = 0; j < n; ++j) {
        const double m = j - n / 2;
        d[j] = -re - shift - sigma_theta * m * m;
    }
    for (int j = 0; j + 1 < n; ++j) {
        dl[j] = -up;  // row j+1, column j
        du[j] = -dn;  // row j, column j+1
    }
    std::vector<cplx> b = rhs.modes();
    const lapack_int status = LAPACKE_zgtsv(LAPACK_COL_MAJOR, n, 1, dl.data(), d.data(), du.data(), b.data(), n);
    if (status != 0)
        throw NumericalError("resolvent_solve: tridiagonal system is singular");

    if (info) {
        double norm = 0.0;
        for (const auto& x : b)
            norm += std::norm(x);
        norm = std::sqrt(norm);
        const double edge = std::max({std::abs(b[0]), std::abs(b[1]), std::abs(b[n - 1]), std::abs(b[n - 2])});
        info->tail = norm > 0.0 ? edge / norm : 0.0;
    }
    return ThetaFun::from_modes(b);
}

ThetaFun compute_U(const IVec2& kvec, double sigma_theta, const ModelParams& p, int n, ResolventInfo* info)
{
    return resolvent_solve(kvec, sigma_theta, multiplier_dB(kvec, p, n), p, info);
}

ThetaFun compute_V(const IVec2& kvec, double sigma_theta, const ModelParams& p, int n, ResolventInfo* info)
{
    return -resolvent_solve(-kvec, sigma_theta, ThetaFun(n, 1.0), p, info);
}

double integral_U_inviscid(int k, const ModelParams& p)
{
    const RescaledConstants rc = rescale(p, k);
    const double z = rc.abs_z();
    return 4.0 * pi * pi * k * rc.e_k / (rc.e_elliptic * rc.lambda_k) *
           (1.0 - z + 2.0 * rc.sigma_k * z * rc.tau_k);
}

const char* to_string(Ccs c)
{
    switch (c) {
    case Ccs::ccs:
        return "ccs";
    case Ccs::cca:
        return "cca";
    default:
        return "neither";
    }
}

Ccs classify_ccs(const ThetaFun& f, double rel_tol)
{
    const int n = f.size();
    const double scale = std::max(f.max_abs(), 1e-300);
    double e_sym = 0.0, e_anti = 0.0;
    for (int j = 0; j < n; ++j) {
        const cplx partner = std::conj(f[(j + n / 2) % n]);
        e_sym = std::max(e_sym, std::abs(f[j] - partner));
        e_anti = std::max(e_anti, std::abs(f[j] + partner));
    }
    if (e_sym <= rel_tol * scale)
        return Ccs::ccs;
    if (e_anti <= rel_tol * scale)
        return Ccs::cca;
    return Ccs::neither;
}

}  // namespace antbif

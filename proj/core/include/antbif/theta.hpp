#pragma once

#include <iosfwd>
#include <vector>

#include "antbif/params.hpp"

namespace antbif {

// Complex 2pi-periodic function sampled at theta_j = 2 pi j / N (N even).
// Modes follow F{g}_n = (1/2pi) int g e^{-in theta}, stored centred:
// index j of modes() holds n = j - N/2.
class ThetaFun {
public:
    ThetaFun() = default;
    explicit ThetaFun(int n, cplx fill = 0.0);

    static ThetaFun from_values(std::vector<cplx> values);
    static ThetaFun from_modes(const std::vector<cplx>& centred);

    template <class F>
    static ThetaFun sample(int n, F&& f)
    {
        ThetaFun g(n);
        for (int j = 0; j < n; ++j)
            g.v_[j] = f(theta(j, n));
        return g;
    }

    static double theta(int j, int n) { return two_pi * j / n; }

    int size() const { return static_cast<int>(v_.size()); }
    const std::vector<cplx>& values() const { return v_; }
    std::vector<cplx>& values() { return v_; }
    cplx operator[](int j) const { return v_[j]; }

    std::vector<cplx> modes() const;
    cplx integral() const;

    ThetaFun derivative(int order = 1) const;
    ThetaFun conj() const;
    ThetaFun shifted(double omega) const;  // theta -> g(theta - omega)
    ThetaFun resampled(int n) const;       // zero-pad or truncate modes

    double max_abs() const;
    double l2() const;  // (int |g|^2 dtheta)^(1/2)

    ThetaFun& operator+=(const ThetaFun& o);
    ThetaFun& operator-=(const ThetaFun& o);
    ThetaFun& operator*=(const ThetaFun& o);
    ThetaFun& operator*=(cplx s);

    void write_csv(std::ostream& os) const;

private:
    std::vector<cplx> v_;
};

ThetaFun operator+(ThetaFun a, const ThetaFun& b);
ThetaFun operator-(ThetaFun a, const ThetaFun& b);
ThetaFun operator*(ThetaFun a, const ThetaFun& b);
ThetaFun operator*(ThetaFun a, cplx s);
ThetaFun operator*(cplx s, ThetaFun a);
ThetaFun operator-(ThetaFun a);

// int f g dtheta (bilinear, no conjugation)
cplx integrate_product(const ThetaFun& f, const ThetaFun& g);

// Fourier multipliers of a positional mode kvec.
ThetaFun multiplier_B(const IVec2& kvec, const ModelParams& p, int n);
ThetaFun multiplier_dB(const IVec2& kvec, const ModelParams& p, int n);  // d/dtheta of B
ThetaFun multiplier_M(const IVec2& kvec, const ModelParams& p, int n);

struct ResolventInfo {
    double tail = 0.0;  // largest of the two outermost modes on each side, relative to the l2 norm
};

// Solves (-M_kvec - shift + sigma_theta d_thth) u = rhs. Tridiagonal in
// theta-Fourier space for sigma_theta > 0, pointwise division at sigma_theta = 0.
ThetaFun resolvent_solve(const IVec2& kvec, double sigma_theta, const ThetaFun& rhs, const ModelParams& p,
                         ResolventInfo* info = nullptr, cplx shift = 0.0);

ThetaFun compute_U(const IVec2& kvec, double sigma_theta, const ModelParams& p, int n,
                   ResolventInfo* info = nullptr);
ThetaFun compute_V(const IVec2& kvec, double sigma_theta, const ModelParams& p, int n,
                   ResolventInfo* info = nullptr);

// int U^{(k,0)}_0 dtheta in closed form.
double integral_U_inviscid(int k, const ModelParams& p);

enum class Ccs { ccs, cca, neither };
const char* to_string(Ccs c);

// ccs: f(theta) = conj(f(theta + pi)); cca: f(theta) = -conj(f(theta + pi)).
Ccs classify_ccs(const ThetaFun& f, double rel_tol = 1e-10);

}  // namespace antbif

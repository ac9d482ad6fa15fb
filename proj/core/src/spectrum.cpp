#include "antbif/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "antbif/coefficients.hpp"
#include "antbif/errors.hpp"

namespace antbif {

bool is_non_pythagorean(int k)
{
    require(k >= 1, "is_non_pythagorean: k must be >= 1");
    for (int l = 1; l < k; ++l)
        for (int m = 1; m < k; ++m)
            if (l * l + m * m == k * k)
                return false;
    return true;
}

int ModeOperator::index(int n) const
{
    if (norm2(kvec) != 0)
        return n + n_c;
    return n < 0 ? n + n_c : n + n_c - 1;
}

ModeOperator assemble_mode_operator(const IVec2& kvec, double chi, double sigma_theta, const ModelParams& p, int n_c)
{
    require(n_c >= 16, "assemble_mode_operator: n_c must be >= 16");
    require(sigma_theta >= 0.0, "assemble_mode_operator: sigma_theta must be non-negative");
    ModeOperator op;
    op.kvec = kvec;
    op.chi = chi;
    op.sigma_theta = sigma_theta;
    op.n_c = n_c;

    if (norm2(kvec) == 0) {
        op.matrix = Eigen::MatrixXcd::Zero(2 * n_c, 2 * n_c);
        for (int n = -n_c; n <= n_c; ++n)
            if (n != 0)
                op.matrix(op.index(n), op.index(n)) = -sigma_theta * n * n;
        return op;
    }

    const int size = 2 * n_c + 1;
    op.matrix = Eigen::MatrixXcd::Zero(size, size);
    const double re = 4.0 * pi * pi * p.sigma_x * norm2(kvec);
    const cplx up = cplx(0.0, pi * p.lambda) * cplx(kvec[0], -kvec[1]);
    const cplx dn = cplx(0.0, pi * p.lambda) * cplx(kvec[0], kvec[1]);
    for (int n = -n_c; n <= n_c; ++n) {
        const int r = op.index(n);
        op.matrix(r, r) = -re - sigma_theta * n * n;
        if (n > -n_c)
            op.matrix(r, r - 1) = -up;
        if (n < n_c)
            op.matrix(r, r + 1) = -dn;
    }
    const std::vector<cplx> dB = multiplier_dB(kvec, p, 8).modes();
    for (int m = -2; m <= 2; ++m)
        op.matrix(op.index(m), op.index(0)) -= chi * dB[m + 4];
    return op;
}

Eigen::VectorXcd mode_vector(const ThetaFun& g, int n_c)
{
    const int n = g.size();
    require(n_c < n / 2, "mode_vector: window wider than the grid");
    const std::vector<cplx> m = g.modes();
    Eigen::VectorXcd v(2 * n_c + 1);
    for (int q = -n_c; q <= n_c; ++q)
        v(q + n_c) = m[q + n / 2];
    return v;
}

ThetaFun from_mode_vector(const Eigen::VectorXcd& v, int n)
{
    const int n_c = static_cast<int>(v.size() - 1) / 2;
    require(n_c < n / 2, "from_mode_vector: window wider than the grid");
    std::vector<cplx> m(n, 0.0);
    for (int q = -n_c; q <= n_c; ++q)
        m[q + n / 2] = v(q + n_c);
    return ThetaFun::from_modes(m);
}

namespace {

// One representative of each +-l pair with 0 < |l|^2 <= r2.
std::vector<IVec2> half_lattice(int r2)
{
    std::vector<IVec2> out;
    const int r = static_cast<int>(std::sqrt(static_cast<double>(r2))) + 1;
    for (int a = 0; a <= r; ++a)
        for (int b = -r; b <= r; ++b) {
            const IVec2 l{a, b};
            const int q = norm2(l);
            if (q == 0 || q > r2 || (a == 0 && b < 0))
                continue;
            out.push_back(l);
        }
    return out;
}

}  // namespace

KernelReport kernel_report(const ModelParams& p, int k, double sigma_theta, int n_c, double rel_tol)
{
    require(k >= 1, "kernel_report: k must be >= 1");
    KernelReport rep;
    rep.chi = chi_k(p, k, sigma_theta);
    for (const IVec2& l : half_lattice((k + 2) * (k + 2))) {
        const ModeOperator op = assemble_mode_operator(l, rep.chi, sigma_theta, p, n_c);
        const Eigen::VectorXd s = Eigen::BDCSVD<Eigen::MatrixXcd>(op.matrix).singularValues();
        const double smax = s(0);
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            const double ratio = s(i) / smax;
            if (ratio < rel_tol) {
                rep.dimension += 2;
                rep.modes.push_back(l);
                rep.modes.push_back(-l);
                rep.max_null_ratio = std::max(rep.max_null_ratio, ratio);
            } else {
                rep.min_nonnull_ratio = std::min(rep.min_nonnull_ratio, ratio);
            }
        }
    }
    std::sort(rep.modes.begin(), rep.modes.end());
    return rep;
}

SpectrumReport full_spectrum_scan(const ModelParams& p, double chi, double sigma_theta, int K_max, int n_c,
                                  double cluster_tol)
{
    require(K_max >= 1, "full_spectrum_scan: K_max must be >= 1");
    SpectrumReport rep;
    rep.chi = chi;
    rep.sigma_theta = sigma_theta;

    auto by_re = [](const cplx& a, const cplx& b) { return a.real() > b.real(); };

    ModeSpectrum zero;
    zero.kvec = {0, 0};
    for (int n = 1; n <= n_c; ++n) {
        zero.eigenvalues.push_back(-sigma_theta * n * n);
        zero.eigenvalues.push_back(-sigma_theta * n * n);
    }
    rep.modes.push_back(std::move(zero));

    for (const IVec2& l : half_lattice(K_max * K_max)) {
        const ModeOperator op = assemble_mode_operator(l, chi, sigma_theta, p, n_c);
        const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(op.matrix, false).eigenvalues();
        ModeSpectrum ms, mc;
        ms.kvec = l;
        mc.kvec = -l;
        for (const cplx& z : ev) {
            ms.eigenvalues.push_back(z);
            mc.eigenvalues.push_back(std::conj(z));
        }
        std::sort(ms.eigenvalues.begin(), ms.eigenvalues.end(), by_re);
        std::sort(mc.eigenvalues.begin(), mc.eigenvalues.end(), by_re);
        rep.modes.push_back(std::move(ms));
        rep.modes.push_back(std::move(mc));
    }

    std::vector<double> re;
    for (const auto& m : rep.modes)
        for (const cplx& z : m.eigenvalues)
            re.push_back(z.real());
    rep.max_re = *std::max_element(re.begin(), re.end());
    rep.next_re = -INFINITY;
    for (double r : re) {
        if (r >= rep.max_re - cluster_tol)
            ++rep.leading_multiplicity;
        else
            rep.next_re = std::max(rep.next_re, r);
    }
    rep.gap = rep.max_re - rep.next_re;
    return rep;
}

cplx dispersion_J(const ModelParams& p, int k, double sigma_theta, cplx mu, int n)
{
    require(k >= 1, "dispersion_J: k must be >= 1");
    const IVec2 kv{k, 0};
    return resolvent_solve(kv, sigma_theta, multiplier_dB(kv, p, n), p, nullptr, mu).integral();
}

std::vector<double> dispersion_real_roots(const ModelParams& p, int k, double chi, double sigma_theta, double mu_min,
                                          double mu_max, int n_scan, int n)
{
    require(mu_max > mu_min && n_scan >= 2, "dispersion_real_roots: invalid scan window");
    auto g = [&](double mu) { return chi / two_pi * dispersion_J(p, k, sigma_theta, mu, n).real() - 1.0; };
    std::vector<double> roots;
    double x0 = mu_min, g0 = g(x0);
    for (int i = 1; i <= n_scan; ++i) {
        const double x1 = mu_min + (mu_max - mu_min) * i / n_scan;
        const double g1 = g(x1);
        if (g0 == 0.0) {
            roots.push_back(x0);
        } else if (g0 * g1 < 0.0) {
            double a = x0, b = x1, ga = g0;
            for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double gm = g(m);
                if (ga * gm <= 0.0) {
                    b = m;
                } else {
                    a = m;
                    ga = gm;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        g0 = g1;
    }
    return roots;
}

}  // namespace antbif

#include "antbif/coefficients.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "antbif/errors.hpp"
#include "antbif/spectrum.hpp"

namespace antbif {

double chi_k(const ModelParams& p, int k, double sigma_theta, const SpectralConfig& cfg)
{
    require(k >= 1, "chi_k: wave number must be >= 1");
    require(sigma_theta >= 0.0, "chi_k: sigma_theta must be non-negative");
    p.validate();
    const double inviscid = integral_U_inviscid(k, p);
    if (sigma_theta == 0.0)
        return two_pi / inviscid;
    ResolventInfo info;
    const double integral = compute_U({k, 0}, sigma_theta, p, cfg.n_theta, &info).integral().real();
    if (info.tail > cfg.tail_tol)
        throw NumericalError("chi_k: theta profile unresolved (tail " + std::to_string(info.tail) +
                             "); increase n_theta");
    if (!(integral / inviscid > 0.0))
        throw NumericalError("chi_k: int U dtheta changed sign; sigma_theta is beyond the bifurcation range");
    return two_pi / integral;
}

ModalField apply_L(const ModalField& u, double chi, double sigma_theta, const ModelParams& p)
{
    const int n = u.nt();
    ModalField out(n);
    for (const auto& [l, g] : u.modes()) {
        ThetaFun r = sigma_theta * g.derivative(2);
        if (norm2(l) != 0) {
            r -= multiplier_M(l, p, n) * g;
            r -= multiplier_dB(l, p, n) * (chi / two_pi * g.integral());
        }
        out.set(l, std::move(r));
    }
    return out;
}

ModalField apply_Linv(const ModalField& g, int k, double chi, double sigma_theta, const ModelParams& p,
                      double resonance_tol, double* max_tail)
{
    const int n = g.nt();
    ModalField out(n);
    ResolventInfo info;
    auto note = [&] {
        if (max_tail)
            *max_tail = std::max(*max_tail, info.tail);
    };
    for (const auto& [l, h] : g.modes()) {
        const int r2 = norm2(l);
        if (r2 == 0) {
            require(sigma_theta > 0.0, "apply_Linv: the 0-mode inverse needs sigma_theta > 0");
            std::vector<cplx> m = h.modes();
            for (int j = 0; j < n; ++j) {
                const int q = j - n / 2;
                m[j] = q == 0 ? cplx(0.0) : -m[j] / (sigma_theta * q * q);
            }
            out.set(l, ThetaFun::from_modes(m));
        } else if (r2 == k * k) {
            out.set(l, ThetaFun(n));
        } else {
            const ThetaFun U = compute_U(l, sigma_theta, p, n, &info);
            note();
            const cplx K = 1.0 - chi / two_pi * U.integral();
            if (std::abs(K) < resonance_tol) {
                std::ostringstream os;
                os << "apply_Linv: resonance at mode (" << l[0] << "," << l[1] << "), |K| = " << std::abs(K);
                throw NumericalError(os.str());
            }
            const ThetaFun Rg = resolvent_solve(l, sigma_theta, h, p, &info);
            note();
            out.set(l, Rg + U * (chi / (two_pi * K) * Rg.integral()));
        }
    }
    return out;
}

namespace {

const ModalField& phi(const KernelBasis& b, int i) { return i == 1 ? b.phi1 : b.phi2; }

// d_th (f B[g] + g B[f])
ModalField sym_flux(const ModalField& f, const ModalField& g, const ModelParams& p)
{
    return (f.product(g.B(p)) + g.product(f.B(p))).dtheta();
}

}  // namespace

ModalField compute_A(int i, int j, const KernelBasis& basis, const ModelParams& p, double resonance_tol)
{
    require((i == 1 || i == 2) && (j == 1 || j == 2), "compute_A: indices must be 1 or 2");
    const ModalField g = sym_flux(phi(basis, i), phi(basis, j), p);
    ModalField A = apply_Linv(g, basis.k, basis.chi_k, basis.sigma_theta, p, resonance_tol);
    A *= cplx(basis.chi_k);
    return A;
}

double coeff_a(const KernelBasis& basis, const ModelParams& p)
{
    return -inner(basis.psi1, basis.phi1.B(p).dtheta()).real() / two_pi;
}

double coeff_b(const KernelBasis& basis, const ModalField& A11, double chi, const ModelParams& p)
{
    return 0.5 * chi * inner(basis.psi1, sym_flux(A11, basis.phi1, p)).real();
}

double coeff_c(const KernelBasis& basis, const ModalField& A22, const ModalField& A12, double chi,
               const ModelParams& p)
{
    return 0.5 * chi * inner(basis.psi1, sym_flux(A22, basis.phi1, p)).real() +
           chi * inner(basis.psi1, sym_flux(A12, basis.phi2, p)).real();
}

double coeff_c_swapped(const KernelBasis& basis, const ModalField& A11, const ModalField& A12, double chi,
                       const ModelParams& p)
{
    return 0.5 * chi * inner(basis.psi2, sym_flux(A11, basis.phi2, p)).real() +
           chi * inner(basis.psi2, sym_flux(A12, basis.phi1, p)).real();
}

std::vector<double> positive_real_roots(const CubicPoly& q, double imag_tol)
{
    const double scale = q.scale();
    if (scale == 0.0)
        return {};
    int deg = 3;
    while (deg > 0 && std::abs(q.c[deg]) <= 1e-14 * scale)
        --deg;
    if (deg == 0)
        return {};
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i)
        C(0, i) = -q.c[deg - 1 - i] / q.c[deg];
    for (int i = 1; i < deg; ++i)
        C(i, i - 1) = 1.0;
    const Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(C, false).eigenvalues();

    std::vector<double> roots;
    for (const cplx& z : ev) {
        if (std::abs(z.imag()) > imag_tol * std::max(1.0, std::abs(z)))
            continue;
        double t = z.real();
        for (int it = 0; it < 2; ++it) {
            const double d = q.derivative(t);
            if (d != 0.0)
                t -= q(t) / d;
        }
        if (t > 0.0)
            roots.push_back(t);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(1.0, x); }),
                roots.end());
    return roots;
}

Thresholds tau_thresholds(const RescaledConstants& rc)
{
    const CubicPoly i1 = I_closed(rc, Which::k1);
    const CubicPoly i2 = I_closed(rc, Which::k2);
    auto one_root = [&](const CubicPoly& q, const char* name) {
        const auto r = positive_real_roots(q);
        if (r.size() != 1)
            throw NumericalError(std::string("tau_thresholds: ") + name + " has " + std::to_string(r.size()) +
                                 " positive roots; sigma_k is outside the small regime");
        return r[0] / (two_pi * rc.k);
    };
    Thresholds t;
    t.tau_Lambda = one_root(i1, "I^k1");
    t.tau_Xi = one_root(i1 + i2, "I^k1 + I^k2");
    t.tau_bmc = one_root(i1 - i2, "I^k1 - I^k2");
    return t;
}

SmallnessCheck check_smallness(const RescaledConstants& rc, double sigma_k_max)
{
    SmallnessCheck out;
    if (rc.sigma_k > sigma_k_max) {
        out.message = "sigma_k = " + std::to_string(rc.sigma_k) + " exceeds sigma_k_max = " + std::to_string(sigma_k_max);
        return out;
    }
    try {
        const Thresholds t = tau_thresholds(rc);
        if (!(t.tau_Xi < t.tau_Lambda && t.tau_Lambda < t.tau_bmc)) {
            out.message = "threshold ordering tau_Xi < tau_Lambda < tau_bmc violated";
            return out;
        }
    } catch (const NumericalError& e) {
        out.message = e.what();
        return out;
    }
    out.ok = true;
    return out;
}

const char* to_string(Criticality c)
{
    switch (c) {
    case Criticality::supercritical:
        return "supercritical";
    case Criticality::subcritical:
        return "subcritical";
    default:
        return "degenerate";
    }
}

namespace {

Criticality sign_label(double v, double scale)
{
    if (std::abs(v) <= 1e-12 * scale)
        return Criticality::degenerate;
    return v > 0.0 ? Criticality::supercritical : Criticality::subcritical;
}

}  // namespace

CriticalityLabels classify_criticality(const BifurcationReport& r, double tau)
{
    const double scale = std::max(std::abs(r.b), std::abs(r.c));
    CriticalityLabels out{sign_label(r.b, scale), sign_label(r.b + r.c, scale)};
    if (r.thresholds) {
        auto at = [&](double t) { return std::abs(tau - t) <= 1e-12 * std::max(1.0, t); };
        if (at(r.thresholds->tau_Lambda))
            out.lane = Criticality::degenerate;
        if (at(r.thresholds->tau_Xi))
            out.spot = Criticality::degenerate;
    }
    return out;
}

BifurcationReport bifurcation_report(const ModelParams& p, int k, const SpectralConfig& cfg)
{
    p.validate();
    require(k >= 1, "bifurcation_report: wave number must be >= 1");
    if (!is_non_pythagorean(k))
        throw ValidationError("bifurcation_report: k = " + std::to_string(k) +
                              " is Pythagorean; the cubic reduction needs a non-Pythagorean wave number");
    require(p.sigma_theta > 0.0, "bifurcation_report: finite-sigma_theta coefficients need sigma_theta > 0");

    const RescaledConstants rc = rescale(p, k);
    BifurcationReport r;
    r.k = k;
    r.tau = p.tau;
    r.sigma_k = rc.sigma_k;
    r.tau_k = rc.tau_k;
    r.sigma_theta_used = p.sigma_theta;
    r.chi_k_inviscid = chi_k(p, k, 0.0);
    r.a_limit = 4.0 * pi / (r.chi_k_inviscid * r.chi_k_inviscid);
    r.b_minus1 = I_closed(rc, Which::k1)(rc.tau_k);
    r.c_minus1 = I_closed(rc, Which::k2)(rc.tau_k);

    const KernelBasis basis = kernel_basis(k, p.sigma_theta, p, cfg.n_theta);
    if (basis.max_tail > cfg.tail_tol)
        throw NumericalError("bifurcation_report: theta profiles unresolved (tail " + std::to_string(basis.max_tail) +
                             "); increase n_theta");
    r.chi_k = basis.chi_k;
    r.pairing = basis.pairing;
    r.n_k = basis.n_k;
    r.max_tail = basis.max_tail;

    const ModalField A11 = compute_A(1, 1, basis, p, cfg.resonance_tol);
    const ModalField A22 = compute_A(2, 2, basis, p, cfg.resonance_tol);
    const ModalField A12 = compute_A(1, 2, basis, p, cfg.resonance_tol);
    r.a = coeff_a(basis, p);
    r.b = coeff_b(basis, A11, r.chi_k, p);
    r.c = coeff_c(basis, A22, A12, r.chi_k, p);
    r.c_swapped = coeff_c_swapped(basis, A11, A12, r.chi_k, p);

    try {
        r.thresholds = tau_thresholds(rc);
    } catch (const NumericalError&) {
        r.thresholds.reset();
    }
    const SmallnessCheck sc = check_smallness(rc, cfg.sigma_k_max);
    r.smallness = sc.ok ? "" : sc.message;

    const CriticalityLabels lab = classify_criticality(r, p.tau);
    r.lane_criticality = lab.lane;
    r.spot_criticality = lab.spot;
    return r;
}

Amplitudes normal_form_amplitude(const BifurcationReport& r, double chi)
{
    Amplitudes out;
    const double d = chi - r.chi_k;
    auto amp = [&](double coef) -> std::optional<double> {
        if (d == 0.0)
            return 0.0;
        const double s2 = r.a * d / coef;
        if (!(s2 > 0.0))
            return std::nullopt;
        return std::sqrt(s2);
    };
    out.s_lane = amp(r.b);
    out.s_spot = amp(r.b + r.c);
    return out;
}

}  // namespace antbif

#include "antbif/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "antbif/appendix.hpp"
#include "antbif/errors.hpp"
#include "antbif/theta.hpp"

namespace antbif {

namespace {

const std::vector<std::string> families = {"d2_mode", "d4_mode", "x_mode",   "y1_mode", "y2_mode", "I_k1_series",
                                           "I_k1_quad", "I_k2_series", "I_k2_quad", "pairing", "int_U0",  "J0"};

class Collector {
public:
    Collector(const OracleSuiteConfig& cfg, double sk, double tk) : cfg_(cfg)
    {
        std::ostringstream os;
        os << "sk=" << sk << ",tk=" << tk;
        tag_ = os.str();
    }

    // scale: magnitude against which the error is measured when the oracle is tiny
    void add(const std::string& family, const std::string& extra, double closed, double oracle, double scale)
    {
        OracleCheck c;
        c.name = family + "[" + tag_ + (extra.empty() ? "" : "," + extra) + "]";
        if (family == cfg_.mutate)
            closed *= 1.0 + 1e-6;
        c.closed = closed;
        c.oracle = oracle;
        c.rel_err = std::abs(closed - oracle) / std::max({std::abs(oracle), scale, 1e-300});
        c.tol = cfg_.tol;
        c.pass = std::isfinite(c.rel_err) && c.rel_err <= c.tol;
        out.push_back(std::move(c));
    }

    // complex values: the error is |closed - oracle| / |oracle|, reported on the modulus
    void add_complex(const std::string& family, const std::string& extra, cplx closed, cplx oracle)
    {
        if (family == cfg_.mutate)
            closed *= 1.0 + 1e-6;
        OracleCheck c;
        c.name = family + "[" + tag_ + (extra.empty() ? "" : "," + extra) + "]";
        c.closed = std::abs(closed);
        c.oracle = std::abs(oracle);
        c.rel_err = std::abs(closed - oracle) / std::max(std::abs(oracle), 1e-300);
        c.tol = cfg_.tol;
        c.pass = std::isfinite(c.rel_err) && c.rel_err <= c.tol;
        out.push_back(std::move(c));
    }

    std::vector<OracleCheck> out;

private:
    const OracleSuiteConfig& cfg_;
    std::string tag_;
};

void one_point(double sk, double tk, const OracleSuiteConfig& cfg, std::vector<OracleCheck>& all)
{
    ModelParams p;
    p.lambda = 1.0;
    p.sigma_x = sk / two_pi;
    p.tau = tk / two_pi;
    p.sigma_theta = 0.0;
    const RescaledConstants rc = rescale(p, 1);
    const int n = cfg.n_theta;
    const IVec2 k1{1, 0}, k2{0, 1};
    Collector col(cfg, sk, tk);

    // |M|^{-2}, |M|^{-4}
    const ThetaFun M = multiplier_M(k1, p, n);
    ThetaFun m2(n), m4(n);
    for (int j = 0; j < n; ++j) {
        const double a = std::norm(M[j]);
        m2.values()[j] = 1.0 / a;
        m4.values()[j] = 1.0 / (a * a);
    }
    const auto d2 = m2.modes(), d4 = m4.modes();
    const double s2 = std::abs(d2[n / 2]), s4 = std::abs(d4[n / 2]);
    for (int m : {0, 1, 2, 3, 4, 6, 10}) {
        const std::string e = "n=" + std::to_string(m);
        // odd modes vanish: measured against the mean
        col.add("d2_mode", e, d_mode(rc, m, 2), d2[n / 2 + m].real(), m % 2 ? s2 : 0.0);
        col.add("d4_mode", e, d_mode(rc, m, 4), d4[n / 2 + m].real(), m % 2 ? s4 : 0.0);
    }

    // X and Y profiles
    const ThetaFun X = multiplier_B(k1, p, n) * compute_V(-k1, 0.0, p, n).derivative() +
                       multiplier_B(-k1, p, n) * compute_V(k1, 0.0, p, n).derivative();
    auto Yof = [&](const IVec2& kj) {
        return multiplier_B(kj, p, n) * compute_U(-kj, 0.0, p, n) + multiplier_B(-kj, p, n) * compute_U(kj, 0.0, p, n);
    };
    const auto xm = X.modes(), y1m = Yof(k1).modes(), y2m = Yof(k2).modes();
    for (int m : {2, 4, 6, 8}) {
        const XYModes c = xy_modes(rc, m);
        const std::string e = "n=" + std::to_string(m);
        col.add_complex("x_mode", e, c.x, xm[n / 2 + m]);
        col.add_complex("y1_mode", e, c.y1, y1m[n / 2 + m]);
        col.add_complex("y2_mode", e, c.y2, y2m[n / 2 + m]);
    }

    // I^{k1}, I^{k2}
    const int omega = std::max(64, n / 2 - 2);
    for (Which w : {Which::k1, Which::k2}) {
        const std::string fam = w == Which::k1 ? "I_k1" : "I_k2";
        const CubicPoly cp = I_closed(rc, w);
        const double closed = cp(tk);
        const double scale = 1e-12 * cp.scale() * std::max(1.0, tk * tk * tk);
        col.add(fam + "_series", "", closed, I_series_oracle(rc, tk, w, omega).value, scale);
        col.add(fam + "_quad", "", closed, I_quadrature_oracle(p, 1, w, n), scale);
    }

    col.add("pairing", "", pairing_phi_psi_closed(rc), pairing_phi_psi_quadrature(p, 1, 0.0, n), 0.0);
    col.add("int_U0", "", integral_U_inviscid(1, p), compute_U(k1, 0.0, p, n).integral().real(), 0.0);

    for (cplx mu : {cplx(0.0), cplx(0.3, 0.0), cplx(0.2, 0.5), cplx(1.0, -0.7)}) {
        std::ostringstream e;
        e << "mu=" << mu.real() << (mu.imag() < 0 ? "" : "+") << mu.imag() << "i";
        const cplx a = dispersion_J_inviscid(rc, mu), b = dispersion_J_quadrature(p, 1, mu, n);
        col.add_complex("J0", e.str(), a, b);
    }

    for (auto& c : col.out)
        all.push_back(std::move(c));
}

}  // namespace

std::vector<std::string> oracle_families() { return families; }

std::vector<OracleCheck> run_oracle_suite(const OracleSuiteConfig& cfg)
{
    require(!cfg.sigma_k.empty() && !cfg.tau_k.empty(), "run_oracle_suite: empty parameter grid");
    require(cfg.n_theta >= 64 && cfg.n_theta % 2 == 0, "run_oracle_suite: n_theta must be even and >= 64");
    require(cfg.mutate.empty() || std::find(families.begin(), families.end(), cfg.mutate) != families.end(),
            "run_oracle_suite: unknown check family '" + cfg.mutate + "'");
    for (double s : cfg.sigma_k)
        require(s > 0.0, "run_oracle_suite: sigma_k must be positive");
    for (double t : cfg.tau_k)
        require(t >= 0.0, "run_oracle_suite: tau_k must be non-negative");
    std::vector<OracleCheck> out;
    for (double sk : cfg.sigma_k)
        for (double tk : cfg.tau_k)
            one_point(sk, tk, cfg, out);
    return out;
}

void write_checks_csv(const std::vector<OracleCheck>& checks, std::ostream& os)
{
    os << "check,closed_form,oracle,rel_error,tolerance,pass\n";
    os.precision(17);
    for (const auto& c : checks)
        os << '"' << c.name << "\"," << c.closed << ',' << c.oracle << ',' << c.rel_err << ',' << c.tol << ','
           << (c.pass ? "true" : "false") << '\n';
}

}  // namespace antbif

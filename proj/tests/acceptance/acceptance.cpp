// Acceptance checks. One line per criterion; exit status 1 if any fails.
// Usage: acceptance [criterion numbers...]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "antbif/coefficients.hpp"
#include "antbif/continuation.hpp"
#include "antbif/errors.hpp"
#include "antbif/linearize.hpp"
#include "antbif/pde.hpp"
#include "antbif/spectrum.hpp"
#include "antbif/verify.hpp"
#include "helpers.hpp"

using namespace antbif;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

// Parameters shared with configs/dynamics.cfg and configs/lane.cfg.
ModelParams spot_params()
{
    ModelParams p;
    p.sigma_x = 0.02;
    p.sigma_theta = 0.1;
    p.tau = 0.0;
    return p;
}

ModelParams lane_params()
{
    ModelParams p;
    p.sigma_x = 0.1;
    p.sigma_theta = 0.1;
    p.tau = 0.5;
    return p;
}

const GridDims desk{32, 32, 64};

Outcome oracles()
{
    const auto checks = run_oracle_suite();
    int failed = 0;
    double worst = 0.0;
    for (const auto& c : checks) {
        failed += !c.pass;
        worst = std::max(worst, c.rel_err);
    }
    return {failed == 0 && !checks.empty(),
            std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) +
                " checks, worst rel error " + fmt("%.2e", worst)};
}

Outcome kernels()
{
    ModelParams p;
    const std::vector<std::pair<int, int>> want{{1, 4}, {2, 4}, {3, 4}, {5, 12}};
    bool ok = true;
    std::string d;
    for (auto [k, dim] : want) {
        const KernelReport r = kernel_report(p, k, 1e-3);
        ok = ok && r.dimension == dim;
        d += "k=" + std::to_string(k) + ":" + std::to_string(r.dimension) + " ";
    }
    return {ok, d + "(expected 4 4 4 12)"};
}

Outcome ladder()
{
    ModelParams p;
    p.sigma_x = sigma_x_for_sigma_k(p, 0.2);
    p.tau = 0.0;
    double prev[3] = {INFINITY, INFINITY, INFINITY};
    double err[3] = {};
    bool decreasing = true;
    for (double st : {1e-1, 1e-2, 1e-3}) {
        p.sigma_theta = st;
        const BifurcationReport r = bifurcation_report(p, 1);
        err[0] = std::abs(r.a - r.a_limit) / std::abs(r.a_limit);
        err[1] = std::abs(st * r.b - r.b_minus1) / std::abs(r.b_minus1);
        err[2] = std::abs(st * r.c - r.c_minus1) / std::abs(r.c_minus1);
        for (int i = 0; i < 3; ++i) {
            decreasing = decreasing && err[i] < prev[i];
            prev[i] = err[i];
        }
    }
    const bool ok = decreasing && err[0] < 0.05 && err[1] < 0.05 && err[2] < 0.05;
    return {ok, std::string(decreasing ? "monotone" : "not monotone") + ", final rel errors a " + fmt("%.2e", err[0]) +
                    ", b " + fmt("%.2e", err[1]) + ", c " + fmt("%.2e", err[2])};
}

Outcome thresholds()
{
    bool ok = true;
    std::string d;
    double ratio = 0.0;
    for (double sk : {0.01, 0.02, 0.05, 0.1}) {
        ModelParams p;
        p.sigma_x = sigma_x_for_sigma_k(p, sk);
        try {
            const Thresholds t = tau_thresholds(rescale(p, 1));
            ok = ok && t.tau_Xi > 0.0 && t.tau_Xi < t.tau_Lambda && t.tau_Lambda < t.tau_bmc;
            if (sk == 0.01)
                ratio = two_pi * t.tau_Xi / sk;
        } catch (const NumericalError& e) {
            ok = false;
            d += "sigma_k=" + fmt("%g", sk) + ": " + e.what() + "; ";
        }
    }
    ok = ok && std::abs(ratio - 1.0) < 0.1;
    return {ok, d + "ordering on sigma_k in {0.01,0.02,0.05,0.1}, tau_Xi/sigma_k at 0.01 = " + fmt("%.4f", ratio)};
}

Outcome gap()
{
    ModelParams p;
    const double chi1 = chi_k(p, 1, p.sigma_theta);
    const SpectrumReport r = full_spectrum_scan(p, chi1, p.sigma_theta, 3, 128);
    const bool ok = std::abs(r.max_re) < 1e-6 && r.next_re < 0.0 && r.leading_multiplicity == 4;
    return {ok, "max Re " + fmt("%.2e", r.max_re) + ", multiplicity " + std::to_string(r.leading_multiplicity) +
                    ", next " + fmt("%.3e", r.next_re) + ", gap " + fmt("%.3e", r.gap)};
}

Outcome symmetries()
{
    const GridDims d{16, 16, 32};
    double inv = 0.0, adj = 0.0, comm = 0.0;
    for (unsigned seed = 1; seed <= 4; ++seed) {
        const ModelParams p = seed % 2 ? spot_params() : lane_params();
        const Field f = testing::random_bandlimited(d, seed, 0.03);
        const Field g = testing::random_bandlimited(d, seed + 100, 0.03);
        inv = std::max({inv, (swap(swap(f)) - f).max_abs(), (antipodal_reflect(antipodal_reflect(f)) - f).max_abs()});
        adj = std::max(adj, std::abs(inner(swap(f), g) - inner(f, swap(g))));
        const double chi = 25.0 + 5.0 * seed;
        comm = std::max({comm, (rhs_F(swap(f), chi, p) - swap(rhs_F(f, chi, p))).max_abs(),
                         (rhs_F(antipodal_reflect(f), chi, p) - antipodal_reflect(rhs_F(f, chi, p))).max_abs()});
    }
    const ModelParams p = spot_params();
    const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, d.nt);
    const double sphi = (swap(kb.phi1.to_field(d)) - kb.phi2.to_field(d)).max_abs();
    const bool ok = inv < 1e-12 && adj < 1e-12 && comm < 1e-10 && sphi < 1e-12;
    return {ok, "involution " + fmt("%.1e", inv) + ", self-adjoint " + fmt("%.1e", adj) + ", commutation " +
                    fmt("%.1e", comm) + ", S phi1 - phi2 " + fmt("%.1e", sphi)};
}

Outcome conservation()
{
    const GridDims d{16, 16, 32};
    const ModelParams p = lane_params();
    const double chi = 30.0;
    Dynamics dyn(p, chi, d);
    const Field f0 = testing::random_bandlimited(d, 77, 0.03);
    auto F = dyn.to_spectral(f0);
    const double m0 = f0.mass();
    double drift = 0.0;
    for (int i = 0; i < 10000; ++i) {
        dyn.step(F, 0.01, Scheme::imex_diffusion);
        if (i % 1000 == 999)
            drift = std::max(drift, std::abs(dyn.to_physical(F).mass() - m0) / m0);
    }
    const Field u(d, 1.0 / two_pi);
    auto U = dyn.to_spectral(u);
    for (int i = 0; i < 100; ++i)
        dyn.step(U, 0.01, Scheme::imex_diffusion);
    const double fixed = (dyn.to_physical(U) - u).max_abs();
    const double r0 = rhs_F(u, chi, p).max_abs();
    const bool ok = drift < 1e-12 && fixed < 1e-14 && r0 < 1e-14;
    return {ok, "mass drift " + fmt("%.1e", drift) + " over 1e4 steps, uniform state moved " + fmt("%.1e", fixed) +
                    ", |F(uniform)| " + fmt("%.1e", r0)};
}

struct Sweeps {
    bool done = false;
    Diagram spot, lane;
    double chi_spot = 0.0, chi_lane = 0.0;
} sweeps;

void run_sweeps()
{
    if (sweeps.done)
        return;
    {
        const ModelParams p = spot_params();
        const double chi1 = chi_k(p, 1, p.sigma_theta);
        const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, desk.nt);
        ContinuationConfig cc;
        cc.solver.dims = desk;
        cc.compute_eigs = false;
        cc.solver.scheme = Scheme::imex_linear;
        cc.solver.dt = 0.5;
        cc.solver.t_max = 4000.0;
        cc.solver.residual_tol = 1e-9;
        sweeps.spot = continuation_sweep(p, Branch::spot, 1.008 * chi1, 0.992 * chi1, 12, cc, kb, chi1);
        sweeps.chi_spot = chi1;
    }
    {
        const ModelParams p = lane_params();
        const double chi1 = chi_k(p, 1, p.sigma_theta);
        const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, desk.nt);
        ContinuationConfig cc;
        cc.solver.dims = desk;
        cc.compute_eigs = false;
        cc.solver.scheme = Scheme::imex_linear;
        cc.solver.dt = 0.02;
        cc.solver.t_max = 400.0;
        cc.solver.residual_tol = 1e-6;
        sweeps.lane = continuation_sweep(p, Branch::lane, 1.04 * chi1, 0.92 * chi1, 13, cc, kb, chi1);
        sweeps.chi_lane = chi1;
    }
    sweeps.done = true;
}

Outcome reproduction()
{
    run_sweeps();
    const double tol = 1e-5;
    bool ok = true;
    std::ostringstream d;

    // tau = 0: converged everywhere, nontrivial only above chi_1, amplitude shrinking toward chi_1
    const Diagram& s = sweeps.spot;
    int conv = 0, nontrivial_below = 0;
    double max_res = 0.0, prev_amp = INFINITY;
    bool shrinking = true;
    for (const auto& pt : s.points) {
        conv += pt.converged;
        if (!pt.converged)
            continue;
        max_res = std::max(max_res, pt.residual);
        if (pt.branch_label != Branch::uniform) {
            nontrivial_below += pt.chi < s.chi_1;
            shrinking = shrinking && pt.amplitude_mode < prev_amp;
            prev_amp = pt.amplitude_mode;
        }
    }
    const bool super = conv == static_cast<int>(s.points.size()) && nontrivial_below == 0 && shrinking &&
                       !detect_fold(s) && prev_amp < INFINITY && max_res < tol;
    ok = ok && super;
    d << "tau=0: " << conv << "/" << s.points.size() << " converged, " << nontrivial_below
      << " nontrivial below chi_1, smallest amplitude " << fmt("%.3f", prev_amp) << ", max residual "
      << fmt("%.1e", max_res) << (super ? " (supercritical)" : " (NOT supercritical)");

    // tau = 0.5 lane: fold below chi_1
    const Diagram& l = sweeps.lane;
    double lane_res = 0.0;
    int lane_conv = 0;
    for (const auto& pt : l.points)
        if (pt.converged && pt.branch_label != Branch::uniform) {
            ++lane_conv;
            lane_res = std::max(lane_res, pt.residual);
        }
    const auto fold = detect_fold(l);
    const bool sub = fold.has_value() && lane_res < tol;
    ok = ok && sub;
    d << "; tau=0.5 lane: " << lane_conv << " nontrivial points, fold "
      << (fold ? fmt("%.4f", *fold / l.chi_1) + " chi_1" : std::string("none")) << ", max residual "
      << fmt("%.1e", lane_res);
    return {ok, d.str()};
}

Outcome slope()
{
    run_sweeps();
    const ModelParams p = spot_params();
    const BifurcationReport r = bifurcation_report(p, 1);
    const double want = r.a / (r.b + r.c);
    // least squares s^2 = alpha chi~ + beta chi~^2; alpha is the slope at onset
    std::vector<std::pair<double, double>> pts;
    for (const auto& pt : sweeps.spot.points)
        if (pt.converged && pt.branch_label == Branch::spot && pt.chi > sweeps.chi_spot)
            pts.push_back({pt.chi - sweeps.chi_spot, pt.amplitude_mode * pt.amplitude_mode});
    if (pts.size() < 3)
        return {false, "only " + std::to_string(pts.size()) + " spot points above chi_1"};
    Eigen::MatrixXd A(pts.size(), 2);
    Eigen::VectorXd y(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
        A(i, 0) = pts[i].first;
        A(i, 1) = pts[i].first * pts[i].first;
        y(i) = pts[i].second;
    }
    const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(y);
    const double err = std::abs(coef(0) - want) / std::abs(want);
    return {err < 0.15, "fitted slope " + fmt("%.5f", coef(0)) + " vs a/(b+c) = " + fmt("%.5f", want) +
                            " from " + std::to_string(pts.size()) + " points, rel error " + fmt("%.3f", err)};
}

Outcome stability()
{
    const ModelParams p = spot_params();
    const KernelBasis kb = kernel_basis(1, p.sigma_theta, p, desk.nt);
    const double chi = 1.005 * kb.chi_k;
    SolverConfig sc;
    sc.dims = desk;
    sc.scheme = Scheme::imex_linear;
    sc.dt = 0.5;
    sc.t_max = 4000.0;
    sc.residual_tol = 1e-9;
    std::ostringstream d;
    bool ok = true;
    for (SeedKind kind : {SeedKind::spot, SeedKind::lane}) {
        sc.symmetry = symmetry_for(kind);
        const EvolveResult e = evolve_to_stationary(seed_initial(kind, 0.05, &kb, desk), chi, p, sc, &kb);
        const LinearizeResult lr = linearize_about(e.final_field, chi, p);
        const bool want_neg = kind == SeedKind::spot;
        const bool sign_ok = want_neg ? lr.leading.real() < 0.0 : lr.leading.real() > 0.0;
        ok = ok && e.converged && lr.converged && sign_ok;
        d << (want_neg ? "spot" : "; lane") << " amplitude " << fmt("%.3f", amplitude_mode(e.final_field, kb))
          << ", leading eigenvalue " << fmt("%+.4e", lr.leading.real()) << " (residual "
          << fmt("%.1e", lr.leading_residual) << ")";
    }
    return {ok, d.str()};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> all = {
        {1, "closed-form/oracle equivalence", 10, oracles},
        {2, "kernel dimensions", 30, kernels},
        {3, "sigma_theta limit ladder", 60, ladder},
        {4, "threshold structure", 5, thresholds},
        {5, "spectral gap at k=1", 30, gap},
        {6, "symmetry suite", 10, symmetries},
        {7, "dynamics conservation", 60, conservation},
        {8, "bifurcation diagrams", 1800, reproduction},
        {9, "normal-form slope", 1800, slope},
        {10, "reduced stability signs", 600, stability},
    };
    std::set<int> pick;
    for (int i = 1; i < argc; ++i)
        pick.insert(std::atoi(argv[i]));

    int failed = 0;
    double sweep_time = 0.0;
    for (const Criterion& c : all) {
        if (!pick.empty() && !pick.count(c.id))
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        // criteria 8 and 9 share the sweeps and one budget
        if (c.id == 8 || c.id == 9) {
            sweep_time += secs;
            secs = sweep_time;
        }
        const bool in_time = secs < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("[%s] criterion %d (%s): %s; %.1f s of %.0f s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    o.detail.c_str(), secs, c.budget_s);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}

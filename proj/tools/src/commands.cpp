#include "commands.hpp"

#include <CLI11.hpp>
#include <Eigen/Core>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>

#include "antbif/coefficients.hpp"
#include "antbif/continuation.hpp"
#include "antbif/errors.hpp"
#include "antbif/pde.hpp"
#include "antbif/spectrum.hpp"
#include "antbif/verify.hpp"
#include "config.hpp"

#ifndef ANTBIF_VERSION
#define ANTBIF_VERSION "unknown"
#endif

namespace antbif::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Common {
    std::string config_path;
    std::vector<std::string> params;
    std::string out_dir = ".";
    std::optional<int> k;
    std::optional<double> tau;
    std::optional<std::string> chi;
};

struct Run {
    std::string command;
    Config cfg;
    ModelParams p;
    int k = 1;
    fs::path out;
    json manifest;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    std::string path(const std::string& name)
    {
        const std::string s = (out / name).string();
        outputs.push_back(s);
        return s;
    }

    std::ofstream open(const std::string& name)
    {
        const std::string s = path(name);
        std::ofstream os(s, std::ios::binary);
        if (!os)
            throw ValidationError("cannot write '" + s + "'");
        return os;
    }

    void finish()
    {
        manifest["command"] = command;
        json params;
        params["gamma"] = p.gamma;
        params["sigma_c"] = p.sigma_c;
        params["sigma_x"] = p.sigma_x;
        params["sigma_theta"] = p.sigma_theta;
        params["lambda"] = p.lambda;
        params["chi"] = p.chi;
        params["tau"] = p.tau;
        params["k"] = k;
        manifest["parameters"] = params;
        json entries = json::object();
        for (const auto& [key, v] : cfg.entries())
            entries[key] = v;
        manifest["config"] = entries;
        manifest["versions"] = {{"antbif", ANTBIF_VERSION},
                                {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                              std::to_string(EIGEN_MINOR_VERSION)}};
        manifest["outputs"] = outputs;
        manifest["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ofstream os((out / (command + "_manifest.json")).string());
        os << std::setw(2) << manifest << '\n';
    }
};

Run prepare(const std::string& command, const Common& c)
{
    Run r;
    r.command = command;
    if (!c.config_path.empty())
        r.cfg = Config::load(c.config_path);
    for (const auto& a : c.params)
        r.cfg.override_with(a);
    if (c.tau)
        r.cfg.set("tau", std::to_string(*c.tau));
    if (c.k)
        r.cfg.set("k", std::to_string(*c.k));
    if (c.chi)
        r.cfg.set("chi", *c.chi);
    r.p = model_params(r.cfg);
    r.k = r.cfg.integer("k", 1);
    require(r.k >= 1, "k must be a positive integer");
    r.out = c.out_dir;
    std::error_code ec;
    fs::create_directories(r.out, ec);
    if (ec)
        throw ValidationError("cannot create output directory '" + c.out_dir + "'");
    return r;
}

SpectralConfig spectral_config(const Config& c)
{
    SpectralConfig s;
    s.n_theta = c.integer("n_theta", s.n_theta);
    s.sigma_k_max = c.number("sigma_k_max", s.sigma_k_max);
    require(s.n_theta >= 16 && s.n_theta % 2 == 0, "n_theta must be even and >= 16");
    return s;
}

// chi_1 at the run's sigma_theta and the resolved chi.
std::pair<double, double> resolve_chi(Run& r, const std::string& fallback)
{
    const double chi_1 = chi_k(r.p, r.k, r.p.sigma_theta, spectral_config(r.cfg));
    const ChiSpec spec = parse_chi(r.cfg.get_or("chi", fallback));
    r.p.chi = spec.resolve(chi_1);
    r.manifest["chi_k"] = chi_1;
    return {chi_1, r.p.chi};
}

SolverConfig solver_config(const Config& c)
{
    SolverConfig s;
    s.dims.n1 = c.integer("n1", s.dims.n1);
    s.dims.n2 = c.integer("n2", s.dims.n2);
    s.dims.nt = c.integer("nt", s.dims.nt);
    s.dt = c.number("dt", s.dt);
    s.t_max = c.number("t_max", s.t_max);
    s.residual_tol = c.number("residual_tol", s.residual_tol);
    s.scheme = scheme_from_string(c.get_or("scheme", to_string(s.scheme)));
    s.dealias = c.integer("dealias", 1) != 0;
    s.check_every = c.integer("check_every", s.check_every);
    s.project_every = c.integer("project_every", s.project_every);
    s.validate();
    return s;
}

json grid_json(const GridDims& d) { return {{"n1", d.n1}, {"n2", d.n2}, {"nt", d.nt}}; }

json report_json(const BifurcationReport& r)
{
    json j;
    j["k"] = r.k;
    j["tau"] = r.tau;
    j["sigma_k"] = r.sigma_k;
    j["tau_k"] = r.tau_k;
    j["sigma_theta"] = r.sigma_theta_used;
    j["chi_k"] = r.chi_k;
    j["chi_k_inviscid"] = r.chi_k_inviscid;
    j["a"] = r.a;
    j["b"] = r.b;
    j["c"] = r.c;
    j["c_swapped"] = r.c_swapped;
    j["a_limit"] = r.a_limit;
    j["b_minus1"] = r.b_minus1;
    j["c_minus1"] = r.c_minus1;
    j["pairing"] = r.pairing;
    j["n_k"] = r.n_k;
    j["max_tail"] = r.max_tail;
    if (r.thresholds)
        j["thresholds"] = {{"tau_Lambda", r.thresholds->tau_Lambda},
                           {"tau_Xi", r.thresholds->tau_Xi},
                           {"tau_b_minus_c", r.thresholds->tau_bmc}};
    else
        j["thresholds"] = nullptr;
    j["smallness_ok"] = r.smallness.empty();
    if (!r.smallness.empty())
        j["smallness"] = r.smallness;
    j["lane_criticality"] = to_string(r.lane_criticality);
    j["spot_criticality"] = to_string(r.spot_criticality);
    return j;
}

json kernel_json(const KernelReport& kr)
{
    json modes = json::array();
    for (const auto& m : kr.modes)
        modes.push_back({m[0], m[1]});
    return {{"chi", kr.chi},
            {"dimension", kr.dimension},
            {"modes", modes},
            {"max_null_ratio", kr.max_null_ratio},
            {"min_nonnull_ratio", kr.min_nonnull_ratio}};
}

int cmd_coeffs(const Common& c, std::optional<double> sigma_k, bool allow_pyth)
{
    Run r = prepare("coeffs", c);
    if (sigma_k) {
        r.p.sigma_x = sigma_x_for_sigma_k(r.p, *sigma_k, r.k);
        r.cfg.set("sigma_x", std::to_string(r.p.sigma_x));
    }
    const SpectralConfig sc = spectral_config(r.cfg);
    if (!is_non_pythagorean(r.k)) {
        if (!allow_pyth)
            throw ValidationError("k = " + std::to_string(r.k) +
                                  " is Pythagorean (k^2 = l^2 + m^2 with l, m > 0); the cubic coefficients need a "
                                  "non-Pythagorean wave number (use --allow-pythagorean for the kernel report only)");
        const KernelReport kr = kernel_report(r.p, r.k, r.p.sigma_theta);
        r.p.chi = kr.chi;
        json j = {{"k", r.k}, {"pythagorean", true}, {"kernel", kernel_json(kr)}};
        r.open("coeffs.json") << std::setw(2) << j << '\n';
        std::cout << "k = " << r.k << " is Pythagorean: coefficients suppressed\n"
                  << "kernel dimension at chi_k = " << kr.chi << ": " << kr.dimension << '\n';
        r.finish();
        return 0;
    }
    const BifurcationReport rep = bifurcation_report(r.p, r.k, sc);
    r.p.chi = rep.chi_k;
    r.manifest["n_theta"] = sc.n_theta;
    r.open("coeffs.json") << std::setw(2) << report_json(rep) << '\n';
    std::cout << std::setprecision(10) << "k = " << rep.k << ", tau = " << rep.tau << ", sigma_k = " << rep.sigma_k
              << ", sigma_theta = " << rep.sigma_theta_used << '\n'
              << "chi_k = " << rep.chi_k << "  (inviscid " << rep.chi_k_inviscid << ")\n"
              << "a = " << rep.a << "  b = " << rep.b << "  c = " << rep.c << '\n'
              << "b + c = " << rep.b + rep.c << "  b - c = " << rep.b - rep.c << '\n';
    if (rep.thresholds)
        std::cout << "tau_Lambda = " << rep.thresholds->tau_Lambda << "  tau_Xi = " << rep.thresholds->tau_Xi
                  << "  tau_(b-c) = " << rep.thresholds->tau_bmc << '\n';
    if (!rep.smallness.empty())
        std::cout << "warning: " << rep.smallness << '\n';
    std::cout << "lane_criticality=" << to_string(rep.lane_criticality)
              << " spot_criticality=" << to_string(rep.spot_criticality) << '\n';
    r.finish();
    return 0;
}

int cmd_spectrum(const Common& c)
{
    Run r = prepare("spectrum", c);
    const auto [chi_1, chi] = resolve_chi(r, "1x");
    const int k_max = r.cfg.integer("k_max", std::max(3, r.k + 2));
    const int n_c = r.cfg.integer("n_c", 128);
    require(k_max >= 1, "k_max must be >= 1");

    const KernelReport kr = kernel_report(r.p, r.k, r.p.sigma_theta, n_c);
    const SpectrumReport sr = full_spectrum_scan(r.p, chi, r.p.sigma_theta, k_max, n_c);

    json j;
    j["chi"] = chi;
    j["chi_k"] = chi_1;
    j["kernel"] = kernel_json(kr);
    j["max_re"] = sr.max_re;
    j["next_re"] = sr.next_re;
    j["gap"] = sr.gap;
    j["leading_multiplicity"] = sr.leading_multiplicity;
    r.open("spectrum.json") << std::setw(2) << j << '\n';

    auto os = r.open("spectrum.csv");
    os << "l1,l2,re,im\n" << std::setprecision(15);
    for (const auto& m : sr.modes)
        for (const auto& e : m.eigenvalues)
            os << m.kvec[0] << ',' << m.kvec[1] << ',' << e.real() << ',' << e.imag() << '\n';

    std::cout << std::setprecision(10) << "chi = " << chi << " (chi_" << r.k << " = " << chi_1 << ")\n"
              << "kernel dimension at chi_k: " << kr.dimension << '\n'
              << "max Re = " << sr.max_re << ", next = " << sr.next_re << ", gap = " << sr.gap
              << ", multiplicity = " << sr.leading_multiplicity << '\n';
    r.finish();
    return 0;
}

int cmd_dispersion(const Common& c)
{
    Run r = prepare("dispersion", c);
    const auto [chi_1, chi] = resolve_chi(r, "1x");
    const double mu_min = r.cfg.number("mu_min", -1.0);
    const double mu_max = r.cfg.number("mu_max", 1.0);
    const int points = r.cfg.integer("mu_points", 201);
    require(mu_min < mu_max && points >= 2, "dispersion: need mu_min < mu_max and mu_points >= 2");
    const int n = spectral_config(r.cfg).n_theta;

    auto os = r.open("dispersion.csv");
    os << "mu,re_J,im_J,characteristic\n" << std::setprecision(15);
    for (int i = 0; i < points; ++i) {
        const double mu = mu_min + (mu_max - mu_min) * i / (points - 1);
        const cplx J = dispersion_J(r.p, r.k, r.p.sigma_theta, mu, n);
        os << mu << ',' << J.real() << ',' << J.imag() << ',' << chi / two_pi * J.real() - 1.0 << '\n';
    }
    const auto roots = dispersion_real_roots(r.p, r.k, chi, r.p.sigma_theta, mu_min, mu_max, points, n);
    r.open("dispersion.json") << std::setw(2) << json{{"chi", chi}, {"chi_k", chi_1}, {"real_roots", roots}} << '\n';
    std::cout << std::setprecision(10) << "chi = " << chi << ", real roots of (chi/2pi) J(mu) = 1 in [" << mu_min
              << ", " << mu_max << "]:";
    for (double m : roots)
        std::cout << ' ' << m;
    std::cout << (roots.empty() ? " none\n" : "\n");
    r.finish();
    return 0;
}

int cmd_evolve(const Common& c, const std::string& init_path)
{
    Run r = prepare("evolve", c);
    const auto [chi_1, chi] = resolve_chi(r, "1.05x");
    SolverConfig sc = solver_config(r.cfg);
    const SeedKind kind = seed_from_string(r.cfg.get_or("init", "spot"));
    const double eps = r.cfg.number("eps", 0.05);
    require(kind != SeedKind::file || !init_path.empty(), "evolve: --init file needs --snapshot PATH");
    sc.symmetry = symmetry_for(kind);

    const KernelBasis basis = kernel_basis(r.k, r.p.sigma_theta, r.p, sc.dims.nt);
    const Field f0 = seed_initial(kind, eps, &basis, sc.dims, init_path);
    const EvolveResult res = evolve_to_stationary(f0, chi, r.p, sc, &basis);

    {
        auto os = r.open("snapshot.bin");
        res.final_field.write_binary(os);
    }
    {
        auto os = r.open("diagnostics.csv");
        write_diagnostics_csv(res, os);
    }
    {
        auto os = r.open("density.csv");
        res.final_field.write_density_csv(os);
    }
    json j = {{"chi", chi},
              {"chi_k", chi_1},
              {"init", r.cfg.get_or("init", "spot")},
              {"scheme", to_string(sc.scheme)},
              {"dt", sc.dt},
              {"grid", grid_json(sc.dims)},
              {"converged", res.converged},
              {"steps", res.steps},
              {"t", res.t.back()},
              {"residual", res.residual.back()},
              {"mass", res.mass.back()},
              {"min_f", res.min_f.back()},
              {"amplitude_mode", amplitude_mode(res.final_field, basis)},
              {"amplitude_l2", amplitude_l2(res.final_field)}};
    r.open("evolve.json") << std::setw(2) << j << '\n';
    r.manifest["grid"] = grid_json(sc.dims);

    std::cout << std::setprecision(8) << "chi = " << chi << " (" << chi / chi_1 << " chi_" << r.k << "), "
              << res.steps << " steps to t = " << res.t.back() << '\n'
              << "residual = " << res.residual.back() << ", amplitude = " << j["amplitude_mode"].get<double>()
              << ", min f = " << res.min_f.back() << '\n';
    r.finish();
    if (!res.converged) {
        std::cerr << "evolve: no stationary state within t_max (residual " << res.residual.back() << " > "
                  << sc.residual_tol << ")\n";
        return 3;
    }
    return 0;
}

int cmd_bifdiag(const Common& c)
{
    Run r = prepare("bifdiag", c);
    const double chi_1 = chi_k(r.p, r.k, r.p.sigma_theta, spectral_config(r.cfg));
    const Branch branch = branch_from_string(r.cfg.get_or("branch", "spot"));
    const double chi_start = parse_chi(r.cfg.get_or("chi_start", "1.3x")).resolve(chi_1);
    const double chi_end = parse_chi(r.cfg.get_or("chi_end", "0.8x")).resolve(chi_1);
    const int steps = r.cfg.integer("steps", 40);

    ContinuationConfig cc;
    cc.solver = solver_config(r.cfg);
    cc.seed_eps = r.cfg.number("eps", cc.seed_eps);
    cc.seed_noise = r.cfg.number("seed_noise", cc.seed_noise);
    cc.compute_eigs = r.cfg.integer("eigs", 1) != 0;
    cc.lin.krylov_dim = r.cfg.integer("krylov_dim", cc.lin.krylov_dim);
    cc.lin.seed = static_cast<unsigned>(r.cfg.integer("seed", static_cast<int>(cc.lin.seed)));

    const KernelBasis basis = kernel_basis(r.k, r.p.sigma_theta, r.p, cc.solver.dims.nt);
    const Diagram d = continuation_sweep(r.p, branch, chi_start, chi_end, steps, cc, basis, chi_1);
    {
        auto os = r.open("bifdiag.csv");
        write_csv(d, os);
    }
    const auto fold = detect_fold(d);
    r.p.chi = chi_start;
    r.manifest["chi_k"] = chi_1;
    r.manifest["grid"] = grid_json(cc.solver.dims);
    r.manifest["seed"] = cc.lin.seed;
    r.manifest["branch"] = to_string(branch);
    r.manifest["chi_window"] = {chi_start, chi_end};
    r.manifest["fold_chi"] = fold ? json(*fold) : json(nullptr);

    int converged = 0;
    for (const auto& pt : d.points)
        converged += pt.converged;
    std::cout << std::setprecision(8) << to_string(branch) << " sweep over [" << chi_end << ", " << chi_start
              << "], chi_" << r.k << " = " << chi_1 << ": " << converged << "/" << d.points.size()
              << " points converged\n";
    if (fold)
        std::cout << "fold at chi = " << *fold << " (" << *fold / chi_1 << " chi_" << r.k << ")\n";
    else
        std::cout << "no fold below chi_" << r.k << '\n';
    r.finish();
    return 0;
}

int cmd_verify(const Common& c, const std::string& grid, const std::string& mutate, double tol)
{
    Run r = prepare("verify", c);
    OracleSuiteConfig oc;
    oc.tol = tol;
    oc.mutate = mutate;
    if (!grid.empty()) {
        std::istringstream is(grid);
        std::string item;
        while (is >> item) {
            const auto eq = item.find('=');
            require(eq != std::string::npos, "--grid entries look like sigma_k=0.05,0.2");
            const std::string key = item.substr(0, eq), vals = item.substr(eq + 1);
            if (key == "sigma_k")
                oc.sigma_k = parse_list(key, vals);
            else if (key == "tau" || key == "tau_k")
                oc.tau_k = parse_list(key, vals);
            else
                throw ValidationError("--grid: unknown axis '" + key + "' (expected sigma_k or tau)");
        }
    }
    const auto checks = run_oracle_suite(oc);
    {
        auto os = r.open("verify.csv");
        write_checks_csv(checks, os);
    }
    int failed = 0;
    double worst = 0.0;
    for (const auto& ch : checks) {
        worst = std::max(worst, ch.rel_err);
        if (!ch.pass) {
            ++failed;
            std::cout << "FAIL " << ch.name << " closed=" << ch.closed << " oracle=" << ch.oracle
                      << " rel_err=" << ch.rel_err << '\n';
        }
    }
    r.manifest["checks"] = checks.size();
    r.manifest["failed"] = failed;
    if (!mutate.empty())
        r.manifest["mutate"] = mutate;
    std::cout << checks.size() - failed << "/" << checks.size() << " checks passed, largest relative error "
              << worst << '\n';
    r.finish();
    return failed == 0 ? 0 : 3;
}

void add_common(CLI::App* sub, Common& c, bool with_chi)
{
    sub->add_option("--config", c.config_path, "key=value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--param", c.params, "override a configuration key (key=value), repeatable");
    sub->add_option("--out", c.out_dir, "output directory");
    sub->add_option("--k", c.k, "wave number");
    sub->add_option("--tau", c.tau, "anticipation length");
    if (with_chi)
        sub->add_option("--chi", c.chi, "interaction strength, absolute or as a multiple of chi_k (1.05x)");
}

}  // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Bifurcation analysis of the ant curvature-chemotaxis model"};
    app.require_subcommand(1);

    Common common;
    std::optional<double> sigma_k;
    bool allow_pyth = false;
    std::string snapshot, grid, mutate;
    double tol = 1e-8;

    auto* coeffs = app.add_subcommand("coeffs", "bifurcation point, cubic coefficients and criticality");
    add_common(coeffs, common, false);
    coeffs->add_option("--sigma-k", sigma_k, "set sigma_x from the rescaled diffusivity");
    coeffs->add_flag("--allow-pythagorean", allow_pyth, "report the kernel only for Pythagorean k");

    auto* spectrum = app.add_subcommand("spectrum", "kernel and linear spectrum about the uniform state");
    add_common(spectrum, common, true);

    auto* dispersion = app.add_subcommand("dispersion", "dispersion function on a real mu interval");
    add_common(dispersion, common, true);

    auto* evolve = app.add_subcommand("evolve", "time-step to a stationary state");
    add_common(evolve, common, true);
    evolve->add_option("--init", [&](const std::vector<std::string>& v) {
        common.params.push_back("init=" + v.front());
        return true;
    }, "uniform, lane, spot or file");
    evolve->add_option("--snapshot", snapshot, "snapshot to start from (with --init file)");

    auto* bifdiag = app.add_subcommand("bifdiag", "natural-parameter continuation in chi");
    add_common(bifdiag, common, false);
    bifdiag->add_option("--branch", [&](const std::vector<std::string>& v) {
        common.params.push_back("branch=" + v.front());
        return true;
    }, "lane or spot");

    auto* verify = app.add_subcommand("verify", "closed forms against their oracles");
    add_common(verify, common, false);
    verify->add_option("--grid", grid, "parameter grid, e.g. \"sigma_k=0.05,0.2,1 tau=0,0.1,1,5\"");
    verify->add_option("--mutate", mutate, "perturb one closed-form family (test mode)");
    verify->add_option("--tol", tol, "relative tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*coeffs)
            return cmd_coeffs(common, sigma_k, allow_pyth);
        if (*spectrum)
            return cmd_spectrum(common);
        if (*dispersion)
            return cmd_dispersion(common);
        if (*evolve)
            return cmd_evolve(common, snapshot);
        if (*bifdiag)
            return cmd_bifdiag(common);
        if (*verify)
            return cmd_verify(common, grid, mutate, tol);
    } catch (const ValidationError& e) {
        std::cerr << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << app.get_subcommands().front()->get_name() << ": numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}

}  // namespace antbif::cli

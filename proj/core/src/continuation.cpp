#include "antbif/continuation.hpp"

#include <cmath>
#include <ostream>

#include "antbif/errors.hpp"

namespace antbif {

const char* to_string(Branch b)
{
    switch (b) {
    case Branch::lane:
        return "lane";
    case Branch::spot:
        return "spot";
    default:
        return "uniform";
    }
}

Branch branch_from_string(const std::string& s)
{
    if (s == "lane")
        return Branch::lane;
    if (s == "spot")
        return Branch::spot;
    if (s == "uniform")
        return Branch::uniform;
    throw ValidationError("unknown branch '" + s + "' (expected lane, spot or uniform)");
}

Diagram continuation_sweep(const ModelParams& p, Branch branch, double chi_start, double chi_end, int steps,
                           const ContinuationConfig& cfg, const KernelBasis& basis, double chi_1)
{
    require(steps >= 2, "continuation_sweep: need at least two points");
    require(chi_start != chi_end, "continuation_sweep: empty chi window");
    const GridDims& dims = cfg.solver.dims;
    const SeedKind kind =
        branch == Branch::lane ? SeedKind::lane : branch == Branch::spot ? SeedKind::spot : SeedKind::uniform;
    const double death = 10.0 * cfg.seed_noise;

    Diagram d;
    d.params = p;
    d.branch = branch;
    d.descending = chi_end < chi_start;
    d.chi_1 = chi_1;

    SolverConfig sc = cfg.solver;
    sc.symmetry = symmetry_for(kind);
    auto fresh = [&](double eps) {
        return kind == SeedKind::uniform ? seed_initial(SeedKind::uniform, 0.0, nullptr, dims)
                                         : seed_initial(kind, eps, &basis, dims);
    };

    Field state = fresh(cfg.seed_eps);
    for (int i = 0; i < steps; ++i) {
        BranchPoint pt;
        pt.chi = chi_start + (chi_end - chi_start) * i / (steps - 1);
        try {
            const EvolveResult r = evolve_to_stationary(state, pt.chi, p, sc, &basis);
            pt.converged = r.converged;
            pt.residual = r.residual.back();
            pt.wall_time = r.wall_time;
            state = r.final_field;
        } catch (const NumericalError&) {
            pt.converged = false;
            pt.residual = INFINITY;
        }
        if (!pt.converged) {
            d.points.push_back(pt);
            state = fresh(cfg.seed_eps);
            continue;
        }
        pt.amplitude_mode = amplitude_mode(state, basis);
        pt.amplitude_l2 = amplitude_l2(state);
        pt.branch_label = pt.amplitude_mode < death ? Branch::uniform : branch;
        if (cfg.compute_eigs) {
            const LinearizeResult lr = linearize_about(state, pt.chi, p, cfg.lin);
            pt.max_re_eig = lr.leading.real();
            pt.stable = pt.max_re_eig < 0.0;
        }
        d.points.push_back(pt);
        // keep a seed-noise perturbation so a dead branch can regrow further on
        if (pt.branch_label == Branch::uniform && kind != SeedKind::uniform)
            state = fresh(cfg.seed_noise);
    }
    return d;
}

std::optional<double> detect_fold(const Diagram& d)
{
    std::optional<double> lo;
    for (const BranchPoint& pt : d.points)
        if (pt.converged && pt.branch_label != Branch::uniform && (!lo || pt.chi < *lo))
            lo = pt.chi;
    if (lo && *lo < d.chi_1)
        return lo;
    return std::nullopt;
}

void write_csv(const Diagram& d, std::ostream& os)
{
    os << "chi,amplitude_l2,amplitude_mode,residual,max_re_eig,stable,branch_label\n";
    os.precision(12);
    for (const BranchPoint& pt : d.points)
        os << pt.chi << ',' << pt.amplitude_l2 << ',' << pt.amplitude_mode << ',' << pt.residual << ','
           << pt.max_re_eig << ',' << (pt.stable ? "true" : "false") << ',' << to_string(pt.branch_label) << '\n';
}

}  // namespace antbif

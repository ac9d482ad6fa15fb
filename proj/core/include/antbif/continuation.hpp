#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "antbif/field.hpp"
#include "antbif/linearize.hpp"
#include "antbif/pde.hpp"

namespace antbif {

enum class Branch { lane, spot, uniform };
const char* to_string(Branch b);
Branch branch_from_string(const std::string& s);

struct BranchPoint {
    double chi = 0.0;
    double amplitude_l2 = 0.0;
    double amplitude_mode = 0.0;
    double residual = 0.0;
    double max_re_eig = 0.0;
    bool stable = false;
    bool converged = false;
    Branch branch_label = Branch::uniform;
    double wall_time = 0.0;
};

struct Diagram {
    std::vector<BranchPoint> points;
    ModelParams params;
    Branch branch = Branch::spot;
    bool descending = true;
    double chi_1 = 0.0;
};

struct ContinuationConfig {
    SolverConfig solver;
    double seed_eps = 0.05;
    double seed_noise = 1e-4;  // branch death below 10x this amplitude
    bool compute_eigs = true;
    LinearizeOptions lin;
};

// Natural-parameter sweep over chi in [chi_start, chi_end] (steps points, both
// ends included), each point warm-started from the previous stationary state.
Diagram continuation_sweep(const ModelParams& p, Branch branch, double chi_start, double chi_end, int steps,
                           const ContinuationConfig& cfg, const KernelBasis& basis, double chi_1);

// Smallest chi of a converged nontrivial point, if it lies below chi_1.
std::optional<double> detect_fold(const Diagram& d);

void write_csv(const Diagram& d, std::ostream& os);

}  // namespace antbif

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "antbif/field.hpp"
#include "antbif/params.hpp"

namespace antbif {

enum class Scheme {
    imex_diffusion,  // sigma_x Lap + sigma_theta d_thth implicit, everything else explicit
    imex_linear,     // full linearisation about the mean implicit, quadratic remainder explicit
};
const char* to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

enum class Symmetry { none, even, lane, spot };
const char* to_string(Symmetry s);

struct SolverConfig {
    GridDims dims{};
    double dt = 0.01;
    double t_max = 500.0;
    double residual_tol = 1e-6;
    bool dealias = true;
    Scheme scheme = Scheme::imex_diffusion;
    Symmetry symmetry = Symmetry::none;
    int check_every = 10;
    int project_every = 100;
    double divergence_bound = 1e3;

    void validate() const;
};

// theta-independent 2-D field on the x-grid, row-major (x1, x2).
std::vector<double> chemical_solve(const std::vector<double>& rho, int n1, int n2, const ModelParams& p);

// Pseudospectral discretisation of the equation functional on a fixed grid.
// Spectral arrays hold the coefficients of e^{2 pi i l.x + i n theta} in FFT
// order, row-major (l1, l2, n).
class Dynamics {
public:
    Dynamics(const ModelParams& p, double chi, const GridDims& dims, bool dealias = true);
    ~Dynamics();
    Dynamics(const Dynamics&) = delete;
    Dynamics& operator=(const Dynamics&) = delete;

    const GridDims& dims() const;
    double chi() const;

    std::vector<cplx> to_spectral(const Field& f) const;
    Field to_physical(const std::vector<cplx>& F) const;

    void rhs(const std::vector<cplx>& F, std::vector<cplx>& out) const;
    void step(std::vector<cplx>& F, double dt, Scheme scheme);

    // Largest dt accepted by the explicit parts of the scheme.
    double max_stable_dt(Scheme scheme) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

Field rhs_F(const Field& f, double chi, const ModelParams& p, bool dealias = true);
Field step_imex(const Field& f, double chi, const ModelParams& p, double dt, Scheme scheme = Scheme::imex_diffusion,
                bool dealias = true);

enum class SeedKind { uniform, lane, spot, file };
SeedKind seed_from_string(const std::string& s);

// Density 1/2pi plus eps times the kernel direction(s); file reads a snapshot.
Field seed_initial(SeedKind kind, double eps, const KernelBasis* basis, const GridDims& dims,
                   const std::string& path = "");

Field project_symmetry(const Field& f, Symmetry s);
Symmetry symmetry_for(SeedKind kind);

// |N <f - mean, psi^{k1}>|: the phi^{k1} coordinate of Q f.
double amplitude_mode(const Field& f, const KernelBasis& basis);
// || f - mean ||_{L2}
double amplitude_l2(const Field& f);

struct EvolveResult {
    Field final_field;
    std::vector<double> t, residual, mass, min_f, amplitude;
    double wall_time = 0.0;
    int steps = 0;
    bool converged = false;
};

EvolveResult evolve_to_stationary(const Field& f0, double chi, const ModelParams& p, const SolverConfig& cfg,
                                  const KernelBasis* basis = nullptr);

void write_diagnostics_csv(const EvolveResult& r, std::ostream& os);

}  // namespace antbif

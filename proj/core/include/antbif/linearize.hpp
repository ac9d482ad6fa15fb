#pragma once

#include <vector>

#include "antbif/field.hpp"
#include "antbif/params.hpp"

namespace antbif {

// (F(f + eps v) - F(f - eps v)) / 2 eps with eps = eps_rel * max(|f|_inf, 1) / |v|_inf.
Field directional_derivative(const Field& f, const Field& v, double chi, const ModelParams& p, double eps_rel = 1e-6,
                             bool dealias = true);

struct LinearizeOptions {
    int krylov_dim = 30;
    int steps_per_vector = 2;  // implicit steps of the linearised flow between Krylov vectors
    double dt = 0.5;
    double eps_rel = 1e-6;
    double tol = 1e-3;  // accepted relative Ritz residual for the leading eigenvalue
    int refine_steps = 20;  // residual enrichment rounds after the Krylov stage
    double precond_dt = 5.0;  // implicit step used to precondition the enrichment vectors
    bool even_only = true;
    bool dealias = true;
    unsigned seed = 12345;
};

struct LinearizeResult {
    std::vector<cplx> eigenvalues;  // Ritz values, decreasing real part
    std::vector<double> residuals;  // |J x - mu x| / |x|
    cplx leading = 0.0;
    double leading_residual = 0.0;
    bool converged = false;
};

// Rightmost eigenvalues of the linearisation about f on zero-mass perturbations
// (R^pi-even ones when even_only). Krylov space of the linearised implicit flow,
// Rayleigh-Ritz with the finite-difference Jacobian.
LinearizeResult linearize_about(const Field& f, double chi, const ModelParams& p, const LinearizeOptions& opt = {});

}  // namespace antbif

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "antbif/params.hpp"
#include "antbif/theta.hpp"

namespace antbif {

bool is_non_pythagorean(int k);

// Restriction of the linearisation about the uniform state to one x-mode, acting
// on theta-Fourier coefficients n = -n_c..n_c (n != 0 only for kvec = 0).
struct ModeOperator {
    IVec2 kvec{0, 0};
    double chi = 0.0;
    double sigma_theta = 0.0;
    int n_c = 0;
    Eigen::MatrixXcd matrix;

    int index(int n) const;  // row of theta-mode n
};

ModeOperator assemble_mode_operator(const IVec2& kvec, double chi, double sigma_theta, const ModelParams& p,
                                    int n_c);

// Centred mode vector of g restricted to |n| <= n_c, and back.
Eigen::VectorXcd mode_vector(const ThetaFun& g, int n_c);
ThetaFun from_mode_vector(const Eigen::VectorXcd& v, int n);

struct KernelReport {
    int dimension = 0;
    std::vector<IVec2> modes;  // one entry per near-null singular value
    double chi = 0.0;
    double max_null_ratio = 0.0;     // largest accepted s_min / s_max
    double min_nonnull_ratio = 1.0;  // smallest rejected s_min / s_max
};

// Near-null singular values of every mode operator with 0 < |l| <= k + 2 at chi^k.
KernelReport kernel_report(const ModelParams& p, int k, double sigma_theta, int n_c = 128, double rel_tol = 1e-6);

struct ModeSpectrum {
    IVec2 kvec{0, 0};
    std::vector<cplx> eigenvalues;  // sorted by decreasing real part
};

struct SpectrumReport {
    double chi = 0.0;
    double sigma_theta = 0.0;
    std::vector<ModeSpectrum> modes;  // includes the 0-mode family
    double max_re = 0.0;
    double next_re = 0.0;  // largest real part outside the leading cluster
    double gap = 0.0;      // max_re - next_re
    int leading_multiplicity = 0;
};

SpectrumReport full_spectrum_scan(const ModelParams& p, double chi, double sigma_theta, int K_max, int n_c = 128,
                                  double cluster_tol = 1e-6);

// J_sigma(mu) = int u dtheta with (-M_{(k,0)} - mu + sigma_theta d_thth) u = d_th B_{(k,0)}.
cplx dispersion_J(const ModelParams& p, int k, double sigma_theta, cplx mu, int n = 512);

// Real roots of (chi / 2pi) J_sigma(mu) = 1 for mu in [mu_min, mu_max], located by a
// sign scan on n_scan points and refined by bisection.
std::vector<double> dispersion_real_roots(const ModelParams& p, int k, double chi, double sigma_theta, double mu_min,
                                          double mu_max, int n_scan = 200, int n = 512);

}  // namespace antbif

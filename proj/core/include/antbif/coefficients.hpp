#pragma once

#include <optional>
#include <string>
#include <vector>

#include "antbif/appendix.hpp"
#include "antbif/field.hpp"
#include "antbif/params.hpp"

namespace antbif {

struct SpectralConfig {
    int n_theta = 512;             // theta grid for profiles, products and inverses
    double tail_tol = 1e-8;        // largest accepted relative edge mode of a resolvent solve
    double resonance_tol = 1e-8;   // smallest accepted |K^l|
    double sigma_k_max = 0.2;
};

// 2 pi / int U^{(k,0)} dtheta; closed form at sigma_theta = 0.
double chi_k(const ModelParams& p, int k, double sigma_theta, const SpectralConfig& cfg = {});

// Mode operator L^l u = (-M_l + sigma_theta d_thth) u - (chi/2pi) d_th B_l int u, applied mode by mode.
ModalField apply_L(const ModalField& u, double chi, double sigma_theta, const ModelParams& p);

// Inverse of L on the complement of the kernel modes |l| = k. The 0-mode uses
// (1/sigma_theta) d_thth^{-1} on zero-mean profiles.
ModalField apply_Linv(const ModalField& g, int k, double chi, double sigma_theta, const ModelParams& p,
                      double resonance_tol = 1e-8, double* max_tail = nullptr);

// chi * L^{-1} d_th (B[phi_i] phi_j + B[phi_j] phi_i)
ModalField compute_A(int i, int j, const KernelBasis& basis, const ModelParams& p, double resonance_tol = 1e-8);

double coeff_a(const KernelBasis& basis, const ModelParams& p);
double coeff_b(const KernelBasis& basis, const ModalField& A11, double chi, const ModelParams& p);
double coeff_c(const KernelBasis& basis, const ModalField& A22, const ModalField& A12, double chi,
               const ModelParams& p);
// c paired against psi^{k2} with the roles of the two directions exchanged.
double coeff_c_swapped(const KernelBasis& basis, const ModalField& A11, const ModalField& A12, double chi,
                       const ModelParams& p);

// Positive real roots, ascending; companion matrix eigenvalues polished by Newton.
std::vector<double> positive_real_roots(const CubicPoly& q, double imag_tol = 1e-9);

struct Thresholds {
    double tau_Lambda = 0.0;  // root of I^{k1}
    double tau_Xi = 0.0;      // root of I^{k1} + I^{k2}
    double tau_bmc = 0.0;     // root of I^{k1} - I^{k2}
};

// Physical tau thresholds (rescaled roots divided by 2 pi k). Throws NumericalError
// unless each cubic has exactly one positive root.
Thresholds tau_thresholds(const RescaledConstants& rc);

struct SmallnessCheck {
    bool ok = false;
    std::string message;
};
SmallnessCheck check_smallness(const RescaledConstants& rc, double sigma_k_max = 0.2);

enum class Criticality { supercritical, subcritical, degenerate };
const char* to_string(Criticality c);

struct BifurcationReport {
    int k = 1;
    double tau = 0.0;
    double sigma_k = 0.0;
    double tau_k = 0.0;
    double sigma_theta_used = 0.0;
    double chi_k = 0.0;
    double chi_k_inviscid = 0.0;
    double a = 0.0, b = 0.0, c = 0.0;
    double c_swapped = 0.0;
    double a_limit = 0.0;  // 4 pi / chi_0^2
    double b_minus1 = 0.0;  // I^{k1}[tau_k]
    double c_minus1 = 0.0;  // I^{k2}[tau_k]
    double pairing = 0.0;
    double n_k = 0.0;
    double max_tail = 0.0;
    std::optional<Thresholds> thresholds;
    std::string smallness;  // empty when the check passed
    Criticality lane_criticality = Criticality::degenerate;
    Criticality spot_criticality = Criticality::degenerate;
};

BifurcationReport bifurcation_report(const ModelParams& p, int k, const SpectralConfig& cfg = {});

struct CriticalityLabels {
    Criticality lane, spot;
};
CriticalityLabels classify_criticality(const BifurcationReport& r, double tau);

struct Amplitudes {
    std::optional<double> s_lane, s_spot;
};
Amplitudes normal_form_amplitude(const BifurcationReport& r, double chi);

}  // namespace antbif

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace antbif {

struct OracleCheck {
    std::string name;  // family[sk=...,tk=...,...]
    double closed = 0.0;
    double oracle = 0.0;
    double rel_err = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct OracleSuiteConfig {
    std::vector<double> sigma_k{0.05, 0.2, 1.0};
    std::vector<double> tau_k{0.0, 0.1, 1.0, 5.0};
    double tol = 1e-8;
    int n_theta = 4096;  // quadrature grid
    std::string mutate;  // family whose closed form is perturbed by a relative 1e-6
};

// Closed forms against FFT, quadrature and series oracles at k = 1, lambda = 1.
std::vector<OracleCheck> run_oracle_suite(const OracleSuiteConfig& cfg = {});

std::vector<std::string> oracle_families();

void write_checks_csv(const std::vector<OracleCheck>& checks, std::ostream& os);

}  // namespace antbif

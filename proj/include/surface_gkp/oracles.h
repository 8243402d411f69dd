#ifndef SURFACE_GKP_ORACLES_H
#define SURFACE_GKP_ORACLES_H

#include <cstdint>
#include <string>
#include <vector>

#include "surface_gkp/layout.h"
#include "surface_gkp/noise_engine.h"
#include "surface_gkp/sigma_tables.h"

namespace surface_gkp {

// Adaptive Gauss-Kronrod quadrature of the Gaussian mass in the odd bins, n in [-50, 50].
double oracle_p_err(double sigma);

// Theta-sum ratio with a fixed |n| <= 100 window and extended precision.
double oracle_p_cond(double sigma, double z);

// Exhaustive minimum over all perfect matchings; +inf entries are missing edges.
double oracle_matching(const std::vector<std::vector<double>>& weights);

struct VarianceRow {
    Table table;
    int branch = 0;
    std::string label;
    std::vector<int> members;  // 1-based k or l
    VarianceCoeffs coeffs;
    double analytic = 0.0;
    double empirical = 0.0;
    int64_t samples = 0;
    double rel_error = 0.0;
};

struct VarianceReport {
    int d = 0;
    double sigma_gkp = 0.0;
    double sigma = 0.0;
    std::vector<VarianceRow> rows;

    double worst_rel_error() const;
};

// Monte Carlo variance of every repeated-round homodyne argument, grouped by
// table branch, from a long chain of linear-correction cycles (round 1 is
// discarded). Runs until every branch has at least `samples` samples.
VarianceReport oracle_variance(const CodeLayout& layout, const NoiseParams& params, int64_t samples, uint64_t seed,
                               int threads = 1);

// Exact (gkp, circuit) variance coefficients of each homodyne argument,
// obtained by symbolic linear propagation through the circuit.
struct ExactVariances {
    // [round][k] for the q (Z graph) and p (X graph) GKP arguments;
    // [round][l] for the syndrome arguments. Round index 0 is round 1.
    std::vector<std::vector<VarianceCoeffs>> h_z, h_x, v_z, v_x;
};

// noisy_rounds noisy cycles followed by one ideal cycle.
ExactVariances exact_variances(const CodeLayout& layout, int noisy_rounds);

std::string variance_report_csv(const VarianceReport& report);
std::string variance_report_json(const VarianceReport& report);

}  // namespace surface_gkp

#endif

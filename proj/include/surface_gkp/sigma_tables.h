#ifndef SURFACE_GKP_SIGMA_TABLES_H
#define SURFACE_GKP_SIGMA_TABLES_H

#include <string>

#include "surface_gkp/layout.h"
#include "surface_gkp/noise_engine.h"

namespace surface_gkp {

// Variance of a homodyne argument as c_gkp * sigma_gkp^2 + c_circuit * sigma^2.
struct VarianceCoeffs {
    double gkp = 0.0;
    double circuit = 0.0;

    double variance(const NoiseParams& p) const {
        return gkp * p.sigma_gkp.value * p.sigma_gkp.value + circuit * p.sigma.value * p.sigma.value;
    }
    VarianceCoeffs operator-(const VarianceCoeffs& o) const { return {gkp - o.gkp, circuit - o.circuit}; }
    bool operator==(const VarianceCoeffs& o) const { return gkp == o.gkp && circuit == o.circuit; }
};

enum class Table { ZH, XH, ZV, XV };

const char* table_name(Table t);

struct TableBranch {
    Table table;
    int id;             // branch index within the table, 0 = bulk
    std::string label;  // short human-readable condition
    VarianceCoeffs coeffs;
};

inline int d_doubleprime(int d) { return (d + 1) / 2; }

// Piecewise effective variances of the repeated-round homodyne arguments.
// Indices are 1-based labels (data k, syndrome l).
class SigmaTables {
public:
    explicit SigmaTables(int d, int d_pp = 0) : d_(d), dpp_(d_pp > 0 ? d_pp : d_doubleprime(d)) {}

    int d() const { return d_; }
    int d_pp() const { return dpp_; }

    TableBranch horizontal(StabType graph, int k) const;
    TableBranch vertical(StabType graph, int l) const;

    // Horizontal variance for round t in 1..d+1, including the first- and
    // last-round adjustments.
    VarianceCoeffs horizontal_round(StabType graph, int k, int round) const;

private:
    int d_;
    int dpp_;
};

// Round-1 variance of the GKP homodyne argument in step 1 or 2.
VarianceCoeffs first_round_coeffs(GkpStep step);

// GKP step in which data label k has its q (Z graph) or p (X graph) measured.
GkpStep correction_step(StabType graph, int k);

}  // namespace surface_gkp

#endif

#ifndef SURFACE_GKP_NOISE_ENGINE_H
#define SURFACE_GKP_NOISE_ENGINE_H

#include <string>
#include <vector>

#include "surface_gkp/gkp_math.h"
#include "surface_gkp/layout.h"

namespace surface_gkp {

struct NoiseParams {
    Sigma sigma_gkp;  // GKP state preparation
    Sigma sigma;      // unified circuit noise: prep, gate, idle, measurement
    bool noisy = true;

    double var_gkp() const { return noisy ? sigma_gkp.value * sigma_gkp.value : 0.0; }
    double var() const { return noisy ? sigma.value * sigma.value : 0.0; }
    NoiseParams ideal() const { return {sigma_gkp, sigma, false}; }
};

enum class ModeKind { Data, Ancilla, ZSynd, XSynd };

struct ModeRef {
    ModeKind kind;
    int index;
};

// Shift noise carried by every mode, position (q) and momentum (p).
struct NoiseState {
    std::vector<double> dq, dp;  // data
    std::vector<double> aq, ap;  // GKP ancillas, one per data qubit
    std::vector<double> zq, zp;  // Z-type syndromes
    std::vector<double> xq, xp;  // X-type syndromes

    NoiseState() = default;
    explicit NoiseState(const CodeLayout& layout);

    double& q(ModeRef m);
    double& p(ModeRef m);
    bool all_finite() const;
};

struct RoundRecord {
    std::vector<double> gkp_residue_q, gkp_residue_p;
    std::vector<int> synd_value_z, synd_value_x;
    std::vector<double> synd_residue_z, synd_residue_x;
    // Raw homodyne arguments before reduction.
    std::vector<double> gkp_raw_q, gkp_raw_p, synd_raw_z, synd_raw_x;

    RoundRecord() = default;
    explicit RoundRecord(const CodeLayout& layout);
};

enum class GateKind { Sum, InverseSum };

enum class GkpStep { Step1, Step2 };

// Lattice: subtract R_sqrt(pi)(outcome), the real protocol. Linear: subtract
// the raw outcome, which keeps the dynamics linear so homodyne arguments have
// exactly the variances the weight tables describe.
enum class CorrectionMode { Lattice, Linear };

// True if data qubit k (0-based) has its position measured in this step.
inline bool measures_q(int k, GkpStep step) { return (step == GkpStep::Step1) == (k % 2 == 0); }

// Syndrome value from a surface-code homodyne outcome.
int stabilizer_value(double xi);

void apply_two_mode_gate(NoiseState& state, GateKind kind, ModeRef control, ModeRef target,
                         const NoiseParams& params, Rng& rng);

void gkp_half_round(NoiseState& state, GkpStep which, const NoiseParams& params, Rng& rng, RoundRecord& record,
                    CorrectionMode mode = CorrectionMode::Lattice);

void surface_round(NoiseState& state, const CodeLayout& layout, const NoiseParams& params, Rng& rng,
                   RoundRecord& record);

// Steps 1 through 6.
void full_cycle(NoiseState& state, const CodeLayout& layout, const NoiseParams& params, Rng& rng,
                RoundRecord& record, CorrectionMode mode = CorrectionMode::Lattice);

std::string format_round_record(const RoundRecord& record);

}  // namespace surface_gkp

#endif

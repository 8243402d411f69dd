#include "surface_gkp/noise_engine.h"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace surface_gkp {

namespace {

// Covariances per unit sigma^2, ordered (control, target).
constexpr Cov2 kSumQ{1.0, 0.5, 4.0 / 3.0};
constexpr Cov2 kSumP{4.0 / 3.0, -0.5, 1.0};
constexpr Cov2 kInvSumQ{1.0, -0.5, 4.0 / 3.0};
constexpr Cov2 kInvSumP{4.0 / 3.0, 0.5, 1.0};

struct GateNoise {
    Chol2 sum_q, sum_p, inv_q, inv_p;

    explicit GateNoise(double var)
        : sum_q(Chol2::of(kSumQ.scaled(var))),
          sum_p(Chol2::of(kSumP.scaled(var))),
          inv_q(Chol2::of(kInvSumQ.scaled(var))),
          inv_p(Chol2::of(kInvSumP.scaled(var))) {}
};

void gate(NoiseState& s, GateKind kind, ModeRef c, ModeRef t, const GateNoise& noise, Rng& rng) {
    double& qc = s.q(c);
    double& qt = s.q(t);
    double& pc = s.p(c);
    double& pt = s.p(t);
    if (kind == GateKind::Sum) {
        qt += qc;
        pc -= pt;
    } else {
        qt -= qc;
        pc += pt;
    }
    const bool sum = kind == GateKind::Sum;
    const auto nq = sample_gaussian(rng, sum ? noise.sum_q : noise.inv_q);
    const auto np = sample_gaussian(rng, sum ? noise.sum_p : noise.inv_p);
    qc += nq[0];
    qt += nq[1];
    pc += np[0];
    pt += np[1];
}

void add_noise(std::vector<double>& v, double var, Rng& rng) {
    if (var == 0.0) return;
    const double sd = std::sqrt(var);
    for (double& x : v) x += sd * rng.normal();
}

void fresh(std::vector<double>& v, double var, Rng& rng) {
    if (var == 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        return;
    }
    const double sd = std::sqrt(var);
    for (double& x : v) x = sd * rng.normal();
}

}  // namespace

NoiseState::NoiseState(const CodeLayout& layout)
    : dq(layout.n_data, 0.0),
      dp(layout.n_data, 0.0),
      aq(layout.n_data, 0.0),
      ap(layout.n_data, 0.0),
      zq(layout.n_synd, 0.0),
      zp(layout.n_synd, 0.0),
      xq(layout.n_synd, 0.0),
      xp(layout.n_synd, 0.0) {}

double& NoiseState::q(ModeRef m) {
    switch (m.kind) {
        case ModeKind::Data: return dq.at(m.index);
        case ModeKind::Ancilla: return aq.at(m.index);
        case ModeKind::ZSynd: return zq.at(m.index);
        case ModeKind::XSynd: return xq.at(m.index);
    }
    throw std::out_of_range("bad mode");
}

double& NoiseState::p(ModeRef m) {
    switch (m.kind) {
        case ModeKind::Data: return dp.at(m.index);
        case ModeKind::Ancilla: return ap.at(m.index);
        case ModeKind::ZSynd: return zp.at(m.index);
        case ModeKind::XSynd: return xp.at(m.index);
    }
    throw std::out_of_range("bad mode");
}

bool NoiseState::all_finite() const {
    for (const auto* v : {&dq, &dp, &aq, &ap, &zq, &zp, &xq, &xp})
        for (double x : *v)
            if (!std::isfinite(x)) return false;
    return true;
}

RoundRecord::RoundRecord(const CodeLayout& layout)
    : gkp_residue_q(layout.n_data, 0.0),
      gkp_residue_p(layout.n_data, 0.0),
      synd_value_z(layout.n_synd, 1),
      synd_value_x(layout.n_synd, 1),
      synd_residue_z(layout.n_synd, 0.0),
      synd_residue_x(layout.n_synd, 0.0),
      gkp_raw_q(layout.n_data, 0.0),
      gkp_raw_p(layout.n_data, 0.0),
      synd_raw_z(layout.n_synd, 0.0),
      synd_raw_x(layout.n_synd, 0.0) {}

int stabilizer_value(double xi) {
    return std::abs(centered_mod(xi, 2.0 * kSqrtPi)) <= 0.5 * kSqrtPi ? +1 : -1;
}

void apply_two_mode_gate(NoiseState& state, GateKind kind, ModeRef control, ModeRef target,
                         const NoiseParams& params, Rng& rng) {
    if (control.kind == target.kind && control.index == target.index) {
        throw std::invalid_argument("gate control and target must differ");
    }
    gate(state, kind, control, target, GateNoise(params.var()), rng);
}

void gkp_half_round(NoiseState& s, GkpStep which, const NoiseParams& params, Rng& rng, RoundRecord& rec,
                    CorrectionMode mode) {
    const double var = params.var();
    const int n = static_cast<int>(s.dq.size());
    const GateNoise noise(var);

    add_noise(s.dq, var, rng);
    add_noise(s.dp, var, rng);
    fresh(s.aq, params.var_gkp(), rng);
    fresh(s.ap, params.var_gkp(), rng);

    for (int k = 0; k < n; ++k) {
        const ModeRef data{ModeKind::Data, k};
        const ModeRef anc{ModeKind::Ancilla, k};
        if (measures_q(k, which)) {
            gate(s, GateKind::Sum, data, anc, noise, rng);
        } else {
            gate(s, GateKind::InverseSum, anc, data, noise, rng);
        }
    }

    add_noise(s.dq, var, rng);
    add_noise(s.dp, var, rng);
    add_noise(s.aq, var, rng);
    add_noise(s.ap, var, rng);

    for (int k = 0; k < n; ++k) {
        if (measures_q(k, which)) {
            const double raw = s.aq[k];
            const double r = centered_mod(raw, kSqrtPi);
            rec.gkp_raw_q[k] = raw;
            rec.gkp_residue_q[k] = r;
            s.dq[k] -= mode == CorrectionMode::Lattice ? r : raw;
        } else {
            const double raw = s.ap[k];
            const double r = centered_mod(raw, kSqrtPi);
            rec.gkp_raw_p[k] = raw;
            rec.gkp_residue_p[k] = r;
            s.dp[k] -= mode == CorrectionMode::Lattice ? r : raw;
        }
    }
}

void surface_round(NoiseState& s, const CodeLayout& layout, const NoiseParams& params, Rng& rng,
                   RoundRecord& rec) {
    const double var = params.var();
    const double sd = std::sqrt(var);
    const GateNoise noise(var);

    add_noise(s.dq, var, rng);
    add_noise(s.dp, var, rng);
    fresh(s.zq, params.var_gkp(), rng);
    fresh(s.zp, params.var_gkp(), rng);
    fresh(s.xq, params.var_gkp(), rng);
    fresh(s.xp, params.var_gkp(), rng);

    std::vector<char> busy(layout.n_data);
    auto idle = [&](double& q, double& p) {
        if (var == 0.0) return;
        q += sd * rng.normal();
        p += sd * rng.normal();
    };
    for (int t = 0; t < kSurfaceSteps; ++t) {
        std::fill(busy.begin(), busy.end(), 0);
        for (int l = 0; l < layout.n_synd; ++l) {
            const int k = layout.z_schedule[l][t];
            if (k == kIdle) {
                idle(s.zq[l], s.zp[l]);
            } else {
                gate(s, GateKind::Sum, {ModeKind::Data, k}, {ModeKind::ZSynd, l}, noise, rng);
                busy[k] = 1;
            }
        }
        for (int l = 0; l < layout.n_synd; ++l) {
            const int k = layout.x_schedule[l][t];
            if (k == kIdle) {
                idle(s.xq[l], s.xp[l]);
            } else {
                const GateKind kind = layout.x_sign[l][t] > 0 ? GateKind::Sum : GateKind::InverseSum;
                gate(s, kind, {ModeKind::XSynd, l}, {ModeKind::Data, k}, noise, rng);
                busy[k] = 1;
            }
        }
        for (int k = 0; k < layout.n_data; ++k)
            if (!busy[k]) idle(s.dq[k], s.dp[k]);
    }

    add_noise(s.dq, var, rng);
    add_noise(s.dp, var, rng);
    add_noise(s.zq, var, rng);
    add_noise(s.zp, var, rng);
    add_noise(s.xq, var, rng);
    add_noise(s.xp, var, rng);

    for (int l = 0; l < layout.n_synd; ++l) {
        rec.synd_raw_z[l] = s.zq[l];
        rec.synd_value_z[l] = stabilizer_value(s.zq[l]);
        rec.synd_residue_z[l] = centered_mod(s.zq[l], kSqrtPi);
        rec.synd_raw_x[l] = s.xp[l];
        rec.synd_value_x[l] = stabilizer_value(s.xp[l]);
        rec.synd_residue_x[l] = centered_mod(s.xp[l], kSqrtPi);
    }
}

void full_cycle(NoiseState& state, const CodeLayout& layout, const NoiseParams& params, Rng& rng,
                RoundRecord& record, CorrectionMode mode) {
    gkp_half_round(state, GkpStep::Step1, params, rng, record, mode);
    gkp_half_round(state, GkpStep::Step2, params, rng, record, mode);
    surface_round(state, layout, params, rng, record);
}

std::string format_round_record(const RoundRecord& r) {
    std::ostringstream os;
    os << std::setprecision(12);
    auto row = [&](const char* name, const auto& v) {
        os << name;
        for (const auto& x : v) os << ' ' << x;
        os << '\n';
    };
    row("gkp_residue_q", r.gkp_residue_q);
    row("gkp_residue_p", r.gkp_residue_p);
    row("synd_value_z", r.synd_value_z);
    row("synd_value_x", r.synd_value_x);
    row("synd_residue_z", r.synd_residue_z);
    row("synd_residue_x", r.synd_residue_x);
    return os.str();
}

}  // namespace surface_gkp

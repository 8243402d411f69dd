#include "surface_gkp/oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

namespace surface_gkp {

double oracle_p_err(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("oracle_p_err needs sigma > 0");
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * M_PI));
    auto pdf = [&](double x) { return norm * std::exp(-x * x / (2.0 * sigma * sigma)); };
    double total = 0.0;
    for (int n = -50; n <= 50; ++n) {
        const double a = (2.0 * n + 0.5) * kSqrtPi;
        const double b = (2.0 * n + 1.5) * kSqrtPi;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(pdf, a, b, 15, 1e-15);
    }
    return total;
}

double oracle_p_cond(double sigma, double z) {
    const long double s2 = static_cast<long double>(sigma) * sigma;
    long double num = 0.0L, den = 0.0L;
    for (int n = -100; n <= 100; ++n) {
        const long double dz = z - n * static_cast<long double>(kSqrtPi);
        const long double t = std::exp(-dz * dz / (2.0L * s2));
        den += t;
        if (n % 2 != 0) num += t;
    }
    return static_cast<double>(num / den);
}

double oracle_matching(const std::vector<std::vector<double>>& w) {
    const int n = static_cast<int>(w.size());
    if (n % 2 != 0) throw std::invalid_argument("oracle_matching needs an even vertex count");
    if (n > 10) throw std::invalid_argument("oracle_matching is capped at 10 vertices");
    std::vector<char> used(n, 0);
    std::function<double(void)> best = [&]() -> double {
        int i = 0;
        while (i < n && used[i]) ++i;
        if (i == n) return 0.0;
        used[i] = 1;
        double out = std::numeric_limits<double>::infinity();
        for (int j = i + 1; j < n; ++j) {
            if (used[j] || !std::isfinite(w[i][j])) continue;
            used[j] = 1;
            out = std::min(out, w[i][j] + best());
            used[j] = 0;
        }
        used[i] = 0;
        return out;
    };
    return best();
}

double VarianceReport::worst_rel_error() const {
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, std::abs(r.rel_error));
    return worst;
}

namespace {

struct BranchKey {
    Table table;
    int branch;
    bool operator<(const BranchKey& o) const { return std::tie(table, branch) < std::tie(o.table, o.branch); }
};

struct Accum {
    double sum_sq = 0.0;
    int64_t n = 0;
};

}  // namespace

VarianceReport oracle_variance(const CodeLayout& layout, const NoiseParams& params, int64_t samples, uint64_t seed,
                               int threads) {
    if (samples < 100000) throw std::invalid_argument("oracle_variance needs at least 1e5 samples per branch");
    const SigmaTables tables(layout.d);
    VarianceReport report;
    report.d = layout.d;
    report.sigma_gkp = params.sigma_gkp.value;
    report.sigma = params.sigma.value;

    // Branch of every homodyne argument, and how many arguments each branch gets per round.
    std::vector<int> hz(layout.n_data), hx(layout.n_data), vz(layout.n_synd), vx(layout.n_synd);
    std::map<BranchKey, VarianceRow> rows;
    auto note = [&](const TableBranch& b, int member) {
        VarianceRow& r = rows[{b.table, b.id}];
        r.table = b.table;
        r.branch = b.id;
        r.label = b.label;
        r.coeffs = b.coeffs;
        r.analytic = b.coeffs.variance(params);
        r.members.push_back(member);
        return b.id;
    };
    for (int k = 1; k <= layout.n_data; ++k) {
        hz[k - 1] = note(tables.horizontal(StabType::Z, k), k);
        hx[k - 1] = note(tables.horizontal(StabType::X, k), k);
    }
    for (int l = 1; l <= layout.n_synd; ++l) {
        vz[l - 1] = note(tables.vertical(StabType::Z, l), l);
        vx[l - 1] = note(tables.vertical(StabType::X, l), l);
    }
    size_t min_members = std::numeric_limits<size_t>::max();
    for (const auto& [key, r] : rows) min_members = std::min(min_members, r.members.size());
    const int64_t rounds = (samples + static_cast<int64_t>(min_members) - 1) / static_cast<int64_t>(min_members);

    const int nthreads = std::max(1, threads);
    std::vector<std::map<BranchKey, Accum>> acc(nthreads);
    auto work = [&](int w) {
        const int64_t begin = rounds * w / nthreads;
        const int64_t end = rounds * (w + 1) / nthreads;
        if (begin == end) return;
        Rng rng(derive_seed({seed, static_cast<uint64_t>(layout.d), static_cast<uint64_t>(w), 0x7a11ULL}));
        NoiseState state(layout);
        RoundRecord rec(layout);
        full_cycle(state, layout, params, rng, rec, CorrectionMode::Linear);  // warm-up, round 1
        auto& a = acc[w];
        for (int64_t r = begin; r < end; ++r) {
            full_cycle(state, layout, params, rng, rec, CorrectionMode::Linear);
            for (int k = 0; k < layout.n_data; ++k) {
                Accum& az = a[{Table::ZH, hz[k]}];
                az.sum_sq += rec.gkp_raw_q[k] * rec.gkp_raw_q[k];
                ++az.n;
                Accum& ax = a[{Table::XH, hx[k]}];
                ax.sum_sq += rec.gkp_raw_p[k] * rec.gkp_raw_p[k];
                ++ax.n;
            }
            for (int l = 0; l < layout.n_synd; ++l) {
                Accum& az = a[{Table::ZV, vz[l]}];
                az.sum_sq += rec.synd_raw_z[l] * rec.synd_raw_z[l];
                ++az.n;
                Accum& ax = a[{Table::XV, vx[l]}];
                ax.sum_sq += rec.synd_raw_x[l] * rec.synd_raw_x[l];
                ++ax.n;
            }
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& [key, r] : rows) {
        Accum total;
        for (const auto& a : acc) {
            auto it = a.find(key);
            if (it == a.end()) continue;
            total.sum_sq += it->second.sum_sq;
            total.n += it->second.n;
        }
        r.samples = total.n;
        r.empirical = total.n ? total.sum_sq / total.n : 0.0;
        r.rel_error = r.analytic > 0.0 ? (r.empirical - r.analytic) / r.analytic : r.empirical;
        report.rows.push_back(r);
    }
    return report;
}

namespace {

// Linear combination of independent standard normal sources.
using Lin = std::map<int, double>;

class Symbolic {
public:
    enum Kind { Gkp = 0, Circuit = 1 };

    Lin fresh(Kind kind) {
        kinds_.push_back(kind);
        return Lin{{static_cast<int>(kinds_.size()) - 1, 1.0}};
    }
    void noise(Lin& v, bool on) {
        if (on) add(v, fresh(Circuit), 1.0);
    }
    // Correlated circuit noise (unit sigma) on the pair (x, y).
    void noise2(Lin& x, Lin& y, const Cov2& c, bool on) {
        if (!on) return;
        const Chol2 l = Chol2::of(c);
        const Lin u = fresh(Circuit);
        const Lin v = fresh(Circuit);
        add(x, u, l.l11);
        add(y, u, l.l21);
        add(y, v, l.l22);
    }
    static void add(Lin& a, const Lin& b, double s) {
        for (const auto& [id, c] : b) {
            double& t = a[id];
            t += s * c;
            if (t == 0.0) a.erase(id);
        }
    }
    VarianceCoeffs coeffs(const Lin& v) const {
        VarianceCoeffs out;
        for (const auto& [id, c] : v) (kinds_[id] == Gkp ? out.gkp : out.circuit) += c * c;
        return out;
    }

private:
    std::vector<Kind> kinds_;
};

}  // namespace

ExactVariances exact_variances(const CodeLayout& layout, int noisy_rounds) {
    const int n = layout.n_data;
    const int m = layout.n_synd;
    Symbolic sym;
    std::vector<Lin> dq(n), dp(n), aq(n), ap(n), zq(m), zp(m), xq(m), xp(m);
    ExactVariances out;
    const Cov2 sum_q{1.0, 0.5, 4.0 / 3.0};      // (control, target)
    const Cov2 sum_p{4.0 / 3.0, -0.5, 1.0};
    auto flip = [](const Cov2& c) { return Cov2{c.yy, c.xy, c.xx}; };
    auto neg = [](const Cov2& c) { return Cov2{c.xx, -c.xy, c.yy}; };

    for (int round = 1; round <= noisy_rounds + 1; ++round) {
        const bool on = round <= noisy_rounds;
        std::vector<VarianceCoeffs> hz(n), hx(n), vz(m), vx(m);
        for (int step = 0; step < 2; ++step) {
            for (int k = 0; k < n; ++k) {
                sym.noise(dq[k], on);
                sym.noise(dp[k], on);
                aq[k] = on ? sym.fresh(Symbolic::Gkp) : Lin{};
                ap[k] = on ? sym.fresh(Symbolic::Gkp) : Lin{};
            }
            for (int k = 0; k < n; ++k) {
                const bool q_meas = (step == 0) == (k % 2 == 0);
                if (q_meas) {  // SUM data -> ancilla
                    Symbolic::add(aq[k], dq[k], 1.0);
                    Symbolic::add(dp[k], ap[k], -1.0);
                    sym.noise2(dq[k], aq[k], sum_q, on);
                    sym.noise2(dp[k], ap[k], sum_p, on);
                } else {  // inverse-SUM ancilla -> data
                    Symbolic::add(dq[k], aq[k], -1.0);
                    Symbolic::add(ap[k], dp[k], 1.0);
                    sym.noise2(aq[k], dq[k], neg(sum_q), on);
                    sym.noise2(ap[k], dp[k], neg(sum_p), on);
                }
            }
            for (int k = 0; k < n; ++k)
                for (Lin* v : {&dq[k], &dp[k], &aq[k], &ap[k]}) sym.noise(*v, on);
            for (int k = 0; k < n; ++k) {
                const bool q_meas = (step == 0) == (k % 2 == 0);
                if (q_meas) {
                    hz[k] = sym.coeffs(aq[k]);
                    Symbolic::add(dq[k], aq[k], -1.0);
                } else {
                    hx[k] = sym.coeffs(ap[k]);
                    Symbolic::add(dp[k], ap[k], -1.0);
                }
            }
        }
        for (int k = 0; k < n; ++k) {
            sym.noise(dq[k], on);
            sym.noise(dp[k], on);
        }
        for (int l = 0; l < m; ++l) {
            for (Lin* v : {&zq[l], &zp[l], &xq[l], &xp[l]}) *v = on ? sym.fresh(Symbolic::Gkp) : Lin{};
        }
        for (int t = 0; t < kSurfaceSteps; ++t) {
            std::vector<char> busy(n, 0);
            for (int l = 0; l < m; ++l) {
                const int k = layout.z_schedule[l][t];
                if (k == kIdle) {
                    sym.noise(zq[l], on);
                    sym.noise(zp[l], on);
                    continue;
                }
                busy[k] = 1;
                Symbolic::add(zq[l], dq[k], 1.0);
                Symbolic::add(dp[k], zp[l], -1.0);
                sym.noise2(dq[k], zq[l], sum_q, on);
                sym.noise2(dp[k], zp[l], sum_p, on);
            }
            for (int l = 0; l < m; ++l) {
                const int k = layout.x_schedule[l][t];
                if (k == kIdle) {
                    sym.noise(xq[l], on);
                    sym.noise(xp[l], on);
                    continue;
                }
                busy[k] = 1;
                const double s = layout.x_sign[l][t];
                Symbolic::add(dq[k], xq[l], s);
                Symbolic::add(xp[l], dp[k], -s);
                const Cov2 cq = s > 0 ? sum_q : neg(sum_q);
                const Cov2 cp = s > 0 ? sum_p : neg(sum_p);
                sym.noise2(dq[k], xq[l], flip(cq), on);
                sym.noise2(dp[k], xp[l], flip(cp), on);
            }
            for (int k = 0; k < n; ++k)
                if (!busy[k]) {
                    sym.noise(dq[k], on);
                    sym.noise(dp[k], on);
                }
        }
        for (int k = 0; k < n; ++k) {
            sym.noise(dq[k], on);
            sym.noise(dp[k], on);
        }
        for (int l = 0; l < m; ++l) {
            for (Lin* v : {&zq[l], &zp[l], &xq[l], &xp[l]}) sym.noise(*v, on);
            vz[l] = sym.coeffs(zq[l]);
            vx[l] = sym.coeffs(xp[l]);
        }
        out.h_z.push_back(hz);
        out.h_x.push_back(hx);
        out.v_z.push_back(vz);
        out.v_x.push_back(vx);
    }
    return out;
}

std::string variance_report_csv(const VarianceReport& report) {
    std::ostringstream os;
    os << "d,sigma_gkp,sigma,table,branch,label,members,coeff_gkp,coeff_circuit,analytic,empirical,samples,rel_error\n";
    os << std::setprecision(10);
    for (const auto& r : report.rows) {
        std::string members;
        for (size_t i = 0; i < r.members.size(); ++i) members += (i ? " " : "") + std::to_string(r.members[i]);
        os << report.d << ',' << report.sigma_gkp << ',' << report.sigma << ',' << table_name(r.table) << ','
           << r.branch << ",\"" << r.label << "\"," << members << ',' << r.coeffs.gkp << ',' << r.coeffs.circuit * 3.0
           << "/3," << r.analytic << ',' << r.empirical << ',' << r.samples << ',' << r.rel_error << '\n';
    }
    return os.str();
}

std::string variance_report_json(const VarianceReport& report) {
    using nlohmann::json;
    json rows = json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"table", table_name(r.table)},
                        {"branch", r.branch},
                        {"label", r.label},
                        {"members", r.members},
                        {"coeff_gkp", r.coeffs.gkp},
                        {"coeff_circuit", r.coeffs.circuit},
                        {"analytic", r.analytic},
                        {"empirical", r.empirical},
                        {"samples", r.samples},
                        {"rel_error", r.rel_error}});
    }
    return json{{"d", report.d}, {"sigma_gkp", report.sigma_gkp}, {"sigma", report.sigma}, {"rows", rows}}.dump(2) +
           "\n";
}

}  // namespace surface_gkp

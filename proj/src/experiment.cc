#include "surface_gkp/experiment.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "surface_gkp/decoder.h"

namespace surface_gkp {

NoiseParams params_for_case(NoiseCase c, double x) {
    switch (c) {
        case NoiseCase::I: return {Sigma(x), Sigma(0.0), true};
        case NoiseCase::II: return {Sigma(0.0), Sigma(x), true};
        case NoiseCase::III: return {Sigma(x), Sigma(x), true};
        case NoiseCase::Custom: break;
    }
    throw std::invalid_argument("custom noise has no single coordinate");
}

double case_coordinate(NoiseCase c, const NoiseParams& p) {
    return c == NoiseCase::I ? p.sigma_gkp.value : p.sigma.value;
}

const char* class_name(LogicalClass c) {
    switch (c) {
        case LogicalClass::I: return "I";
        case LogicalClass::X: return "X";
        case LogicalClass::Z: return "Z";
        case LogicalClass::Y: return "Y";
    }
    return "?";
}

namespace {

int parity_of(const std::vector<double>& v) {
    long long total = 0;
    for (double x : v) {
        const long long m = std::llround(x / kSqrtPi);
        if (std::abs(x - m * kSqrtPi) > 1e-6) {
            throw std::logic_error("data shift " + std::to_string(x) + " is not a multiple of sqrt(pi)");
        }
        total += m;
    }
    return static_cast<int>(((total % 2) + 2) % 2);
}

}  // namespace

LogicalClass classify(const std::vector<double>& dq, const std::vector<double>& dp) {
    const int q = parity_of(dq);
    const int p = parity_of(dp);
    if (q && p) return LogicalClass::Y;
    if (q) return LogicalClass::X;
    if (p) return LogicalClass::Z;
    return LogicalClass::I;
}

TrialRunner::TrialRunner(int d)
    : layout_(build_layout(d)),
      z_topo_(make_topology(layout_, StabType::Z)),
      x_topo_(make_topology(layout_, StabType::X)) {}

std::vector<RoundRecord> TrialRunner::simulate(const NoiseParams& params, Rng& rng, NoiseState& state,
                                               const std::vector<Fault>& faults) const {
    const int d = layout_.d;
    std::vector<RoundRecord> records;
    records.reserve(d + 1);
    const NoiseParams ideal = params.ideal();
    for (int t = 1; t <= d + 1; ++t) {
        for (const auto& f : faults) {
            if (f.round != t) continue;
            if (f.kind == Fault::DataQ) state.dq.at(f.index) += f.amount;
            if (f.kind == Fault::DataP) state.dp.at(f.index) += f.amount;
        }
        RoundRecord rec(layout_);
        full_cycle(state, layout_, t <= d ? params : ideal, rng, rec);
        for (const auto& f : faults) {
            if (f.round != t) continue;
            if (f.kind == Fault::FlipZ) rec.synd_value_z.at(f.index) *= -1;
            if (f.kind == Fault::FlipX) rec.synd_value_x.at(f.index) *= -1;
        }
        records.push_back(std::move(rec));
    }
    return records;
}

TrialOutcome TrialRunner::decode_and_classify(const std::vector<RoundRecord>& records, NoiseState state,
                                              const WeightModel& weights) const {
    const GraphPair graphs = build_graphs(records, layout_, weights, z_topo_, x_topo_);
    const DecodeResult rz = decode(graphs.z, layout_.n_data);
    const DecodeResult rx = decode(graphs.x, layout_.n_data);
    for (int k = 0; k < layout_.n_data; ++k) {
        if (rz.flips[k]) state.dq[k] += kSqrtPi;
        if (rx.flips[k]) state.dp[k] += kSqrtPi;
    }
    TrialOutcome out;
    out.logical_class = classify(state.dq, state.dp);
    out.defects_z = rz.defect_count;
    out.defects_x = rx.defect_count;
    out.weight_z = rz.matched_weight;
    out.weight_x = rx.matched_weight;
    return out;
}

TrialOutcome TrialRunner::run(const NoiseParams& params, bool use_info, Rng& rng,
                              const std::vector<Fault>& faults) const {
    NoiseState state(layout_);
    const auto records = simulate(params, rng, state, faults);
    return decode_and_classify(records, std::move(state), WeightModel(layout_, params, use_info));
}

TrialOutcome run_trial(int d, const NoiseParams& params, bool use_info, Rng& rng) {
    return TrialRunner(d).run(params, use_info, rng);
}

std::vector<double> Grid::values() const {
    std::vector<double> out;
    if (n == 1) return {lo};
    for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
    return out;
}

Grid Grid::parse(const std::string& text) {
    Grid g;
    char c1 = 0, c2 = 0;
    std::istringstream is(text);
    if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.n) || c1 != ':' || c2 != ':' || g.n < 1 || !(is >> std::ws).eof()) {
        throw std::invalid_argument("grid must look like lo:hi:n, got '" + text + "'");
    }
    return g;
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (distances.empty()) throw std::invalid_argument("need at least one distance");
    for (int d : distances)
        if (d < 3 || d % 2 == 0) throw std::invalid_argument("distances must be odd and >= 3");
    if (noise_case != NoiseCase::Custom && !grid) throw std::invalid_argument("--case needs --grid");
}

std::vector<NoiseParams> ExperimentConfig::noise_points() const {
    if (noise_case == NoiseCase::Custom) return {{Sigma(sigma_gkp), Sigma(sigma), true}};
    std::vector<NoiseParams> out;
    for (double x : grid->values()) out.push_back(params_for_case(noise_case, x));
    return out;
}

Interval wilson_interval(int64_t k, int64_t n, double z) {
    if (n <= 0) return {0.0, 1.0};
    const double p = static_cast<double>(k) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    const double lo = k == 0 ? 0.0 : std::max(0.0, centre - half);
    const double hi = k == n ? 1.0 : std::min(1.0, centre + half);
    return {lo, hi};
}

uint64_t trial_seed(uint64_t master, int d, const NoiseParams& params, int64_t trial) {
    return derive_seed({master, static_cast<uint64_t>(d), std::bit_cast<uint64_t>(params.sigma_gkp.value),
                        std::bit_cast<uint64_t>(params.sigma.value), static_cast<uint64_t>(trial)});
}

namespace {

struct Counts {
    int64_t x = 0, z = 0, y = 0;

    void add(LogicalClass c) {
        if (c == LogicalClass::X) ++x;
        if (c == LogicalClass::Z) ++z;
        if (c == LogicalClass::Y) ++y;
    }
};

}  // namespace

BatchResult run_batch(const ExperimentConfig& config) {
    config.validate();
    BatchResult out;
    const auto points = config.noise_points();
    for (int d : config.distances) {
        const TrialRunner runner(d);
        for (const NoiseParams& params : points) {
            const auto start = std::chrono::steady_clock::now();
            const WeightModel primary(runner.layout(), params, config.use_info);
            const WeightModel secondary(runner.layout(), params, !config.use_info);
            const int nthreads = static_cast<int>(std::min<int64_t>(config.threads, config.trials));
            std::vector<Counts> primary_counts(nthreads), secondary_counts(nthreads);
            std::vector<std::exception_ptr> errors(nthreads);
            auto work = [&](int w) {
                try {
                    const int64_t begin = config.trials * w / nthreads;
                    const int64_t end = config.trials * (w + 1) / nthreads;
                    for (int64_t t = begin; t < end; ++t) {
                        Rng rng(trial_seed(config.seed, d, params, t));
                        NoiseState state(runner.layout());
                        const auto records = runner.simulate(params, rng, state);
                        if (config.also_without_info)
                            secondary_counts[w].add(runner.decode_and_classify(records, state, secondary).logical_class);
                        primary_counts[w].add(runner.decode_and_classify(records, std::move(state), primary).logical_class);
                    }
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            };
            if (nthreads == 1) {
                work(0);
            } else {
                std::vector<std::thread> pool;
                for (int w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
                for (auto& th : pool) th.join();
            }
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
            const double secs =
                config.timing ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() : 0.0;
            auto emit = [&](const std::vector<Counts>& counts, bool use_info) {
                PointResult r;
                r.noise_case = config.noise_case;
                r.d = d;
                r.sigma_gkp = params.sigma_gkp.value;
                r.sigma = params.sigma.value;
                r.use_info = use_info;
                r.trials = config.trials;
                for (const auto& c : counts) {
                    r.count_x += c.x;
                    r.count_z += c.z;
                    r.count_y += c.y;
                }
                r.seconds = secs;
                out.rows.push_back(r);
            };
            emit(primary_counts, config.use_info);
            if (config.also_without_info) emit(secondary_counts, !config.use_info);
        }
    }
    return out;
}

namespace {

struct Curve {
    std::vector<double> x;
    std::vector<int64_t> k;
    std::vector<int64_t> n;
};

double smoothed_log_rate(int64_t k, int64_t n) { return std::log((k + 0.5) / (n + 1.0)); }

std::vector<PairCrossing> pair_crossings(const std::map<int, Curve>& curves) {
    std::vector<PairCrossing> out;
    for (auto a = curves.begin(); a != curves.end(); ++a) {
        for (auto b = std::next(a); b != curves.end(); ++b) {
            PairCrossing pc{a->first, b->first};
            const Curve& s = a->second;
            const Curve& l = b->second;
            for (size_t i = 0; i + 1 < s.x.size(); ++i) {
                const double f0 = smoothed_log_rate(s.k[i], s.n[i]) - smoothed_log_rate(l.k[i], l.n[i]);
                const double f1 = smoothed_log_rate(s.k[i + 1], s.n[i + 1]) - smoothed_log_rate(l.k[i + 1], l.n[i + 1]);
                if (f0 > 0.0 && f1 <= 0.0) {
                    pc.found = true;
                    pc.x = s.x[i] + (s.x[i + 1] - s.x[i]) * f0 / (f0 - f1);
                    break;
                }
            }
            out.push_back(pc);
        }
    }
    return out;
}

bool combine(const std::vector<PairCrossing>& pairs, double& value) {
    double sum = 0.0;
    int n = 0;
    for (const auto& p : pairs)
        if (p.found) {
            sum += p.x;
            ++n;
        }
    if (n == 0) return false;
    value = sum / n;
    return true;
}

}  // namespace

CrossingEstimate estimate_crossing(const BatchResult& batch, bool use_info, uint64_t seed, int bootstrap) {
    std::map<int, Curve> curves;
    for (const auto& r : batch.rows) {
        if (r.use_info != use_info) continue;
        const NoiseParams p{Sigma(r.sigma_gkp), Sigma(r.sigma), true};
        Curve& c = curves[r.d];
        c.x.push_back(case_coordinate(r.noise_case, p));
        c.k.push_back(r.count_x);
        c.n.push_back(r.trials);
    }
    CrossingEstimate est;
    est.use_info = use_info;
    if (curves.size() < 2) return est;
    for (auto& [d, c] : curves) {
        // Rows come out grid-ordered already; keep a defensive sort.
        std::vector<size_t> idx(c.x.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return c.x[a] < c.x[b]; });
        Curve sorted;
        for (size_t i : idx) {
            sorted.x.push_back(c.x[i]);
            sorted.k.push_back(c.k[i]);
            sorted.n.push_back(c.n[i]);
        }
        c = sorted;
    }
    est.pairs = pair_crossings(curves);
    est.found = combine(est.pairs, est.estimate);
    if (!est.found) return est;

    Rng rng(derive_seed({seed, 0xb007ULL}));
    std::vector<double> samples;
    for (int b = 0; b < bootstrap; ++b) {
        std::map<int, Curve> resampled = curves;
        for (auto& [d, c] : resampled)
            for (size_t i = 0; i < c.k.size(); ++i) {
                std::binomial_distribution<int64_t> binom(c.n[i], static_cast<double>(c.k[i]) / c.n[i]);
                c.k[i] = binom(rng.engine());
            }
        double v = 0.0;
        if (combine(pair_crossings(resampled), v)) {
            samples.push_back(v);
        } else {
            ++est.bootstrap_failures;
        }
    }
    est.bootstrap_samples = static_cast<int>(samples.size());
    if (!samples.empty()) {
        std::sort(samples.begin(), samples.end());
        auto quantile = [&](double q) {
            const double pos = q * (samples.size() - 1);
            const size_t i = static_cast<size_t>(std::floor(pos));
            const size_t j = std::min(i + 1, samples.size() - 1);
            return samples[i] + (samples[j] - samples[i]) * (pos - i);
        };
        est.lo = quantile(0.025);
        est.hi = quantile(0.975);
    }
    return est;
}

ScanResult scan_threshold(const ExperimentConfig& config) {
    if (config.distances.size() < 2) throw std::invalid_argument("scan needs at least two distances");
    if (!config.grid || config.grid->n < 3) throw std::invalid_argument("scan needs a grid with at least 3 points");
    ScanResult out;
    out.batch = run_batch(config);
    out.crossings.push_back(estimate_crossing(out.batch, config.use_info, config.seed));
    if (config.also_without_info) out.crossings.push_back(estimate_crossing(out.batch, !config.use_info, config.seed));
    return out;
}

namespace {

std::string fmt(double v, int precision) {
    std::ostringstream os;
    os << std::setprecision(precision) << v;
    return os.str();
}

}  // namespace

std::string to_csv(const BatchResult& batch) {
    std::ostringstream os;
    os << "case,d,sigma_gkp,sigma,use_info,trials,px,px_lo,px_hi,pz,pz_lo,pz_hi,py,seconds\n";
    for (const auto& r : batch.rows) {
        const Interval cx = r.px_ci();
        const Interval cz = r.pz_ci();
        os << static_cast<int>(r.noise_case) << ',' << r.d << ',' << fmt(r.sigma_gkp, 10) << ',' << fmt(r.sigma, 10)
           << ',' << (r.use_info ? 1 : 0) << ',' << r.trials << ',' << fmt(r.px(), 10) << ',' << fmt(cx.lo, 10) << ','
           << fmt(cx.hi, 10) << ',' << fmt(r.pz(), 10) << ',' << fmt(cz.lo, 10) << ',' << fmt(cz.hi, 10) << ','
           << fmt(r.py(), 10) << ',' << std::fixed << std::setprecision(3) << r.seconds << std::defaultfloat << '\n';
    }
    return os.str();
}

std::string to_json(const ExperimentConfig& config, const BatchResult& batch,
                    const std::vector<CrossingEstimate>& crossings) {
    using nlohmann::json;
    json cfg;
    cfg["case"] = static_cast<int>(config.noise_case);
    if (config.noise_case == NoiseCase::Custom) {
        cfg["sigma_gkp"] = config.sigma_gkp;
        cfg["sigma"] = config.sigma;
    } else {
        cfg["grid"] = {{"lo", config.grid->lo}, {"hi", config.grid->hi}, {"n", config.grid->n}};
    }
    cfg["distances"] = config.distances;
    cfg["trials"] = config.trials;
    cfg["seed"] = config.seed;
    cfg["use_info"] = config.use_info;
    cfg["threads"] = config.threads;
    json rows = json::array();
    for (const auto& r : batch.rows) {
        const Interval cx = r.px_ci();
        const Interval cz = r.pz_ci();
        rows.push_back({{"case", static_cast<int>(r.noise_case)},
                        {"d", r.d},
                        {"sigma_gkp", r.sigma_gkp},
                        {"sigma", r.sigma},
                        {"use_info", r.use_info},
                        {"trials", r.trials},
                        {"px", r.px()},
                        {"px_lo", cx.lo},
                        {"px_hi", cx.hi},
                        {"pz", r.pz()},
                        {"pz_lo", cz.lo},
                        {"pz_hi", cz.hi},
                        {"py", r.py()},
                        {"seconds", r.seconds}});
    }
    json xs = json::array();
    for (const auto& c : crossings) {
        json pairs = json::array();
        for (const auto& p : c.pairs) {
            json pj{{"d_small", p.d_small}, {"d_large", p.d_large}, {"found", p.found}};
            if (p.found) pj["x"] = p.x;
            pairs.push_back(pj);
        }
        json cj{{"use_info", c.use_info}, {"found", c.found}, {"pairs", pairs}};
        if (c.found) {
            cj["estimate"] = c.estimate;
            cj["ci95"] = {c.lo, c.hi};
            cj["bootstrap_samples"] = c.bootstrap_samples;
            cj["bootstrap_failures"] = c.bootstrap_failures;
        } else {
            cj["status"] = "out-of-range";
        }
        xs.push_back(cj);
    }
    return json{{"config", cfg}, {"rows", rows}, {"crossings", xs}}.dump(2) + "\n";
}

}  // namespace surface_gkp

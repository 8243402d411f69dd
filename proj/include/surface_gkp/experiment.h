#ifndef SURFACE_GKP_EXPERIMENT_H
#define SURFACE_GKP_EXPERIMENT_H

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "surface_gkp/layout.h"
#include "surface_gkp/noise_engine.h"
#include "surface_gkp/space_time_graph.h"

namespace surface_gkp {

enum class NoiseCase { Custom = 0, I = 1, II = 2, III = 3 };

// Case I: GKP noise only. Case II: circuit noise only. Case III: equal.
NoiseParams params_for_case(NoiseCase c, double x);
// The swept coordinate of a noise point (sigma_gkp for case I, sigma otherwise).
double case_coordinate(NoiseCase c, const NoiseParams& p);

enum class LogicalClass { I, X, Z, Y };

const char* class_name(LogicalClass c);

// Parity classification of the final data shifts. Throws std::logic_error if
// any shift is not within 1e-6 of a multiple of sqrt(pi).
LogicalClass classify(const std::vector<double>& dq, const std::vector<double>& dp);

struct TrialOutcome {
    LogicalClass logical_class = LogicalClass::I;
    int defects_z = 0;
    int defects_x = 0;
    double weight_z = 0.0;
    double weight_x = 0.0;
};

// Deterministic fault for noise-off tests. Data shifts are added before the
// given round's GKP steps; syndrome flips invert the recorded value of that round.
struct Fault {
    enum Kind { DataQ, DataP, FlipZ, FlipX };
    Kind kind;
    int round;  // 1..d+1 for data shifts, 1..d for flips
    int index;  // 0-based data or syndrome index
    double amount = kSqrtPi;
};

// Per-distance cache of layout and graph structure.
class TrialRunner {
public:
    explicit TrialRunner(int d);

    const CodeLayout& layout() const { return layout_; }

    // Simulate d noisy rounds and one ideal round, filling records.
    std::vector<RoundRecord> simulate(const NoiseParams& params, Rng& rng, NoiseState& state,
                                      const std::vector<Fault>& faults = {}) const;
    TrialOutcome decode_and_classify(const std::vector<RoundRecord>& records, NoiseState state,
                                     const WeightModel& weights) const;

    TrialOutcome run(const NoiseParams& params, bool use_info, Rng& rng, const std::vector<Fault>& faults = {}) const;

private:
    CodeLayout layout_;
    std::shared_ptr<const GraphTopology> z_topo_;
    std::shared_ptr<const GraphTopology> x_topo_;
};

TrialOutcome run_trial(int d, const NoiseParams& params, bool use_info, Rng& rng);

struct Grid {
    double lo = 0.0;
    double hi = 0.0;
    int n = 0;

    std::vector<double> values() const;
    static Grid parse(const std::string& text);  // "lo:hi:n"
};

struct ExperimentConfig {
    NoiseCase noise_case = NoiseCase::Custom;
    double sigma_gkp = 0.0;  // custom point
    double sigma = 0.0;
    std::optional<Grid> grid;  // required for cases I-III
    std::vector<int> distances{3, 5, 7};
    int64_t trials = 1000;
    uint64_t seed = 1;
    bool use_info = true;
    bool also_without_info = false;  // decode every trial both ways
    int threads = 1;
    bool timing = true;

    std::vector<NoiseParams> noise_points() const;
    void validate() const;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

Interval wilson_interval(int64_t successes, int64_t trials, double z = 1.959963984540054);

struct PointResult {
    NoiseCase noise_case = NoiseCase::Custom;
    int d = 0;
    double sigma_gkp = 0.0;
    double sigma = 0.0;
    bool use_info = true;
    int64_t trials = 0;
    int64_t count_x = 0;
    int64_t count_z = 0;
    int64_t count_y = 0;
    double seconds = 0.0;

    double px() const { return static_cast<double>(count_x) / trials; }
    double pz() const { return static_cast<double>(count_z) / trials; }
    double py() const { return static_cast<double>(count_y) / trials; }
    Interval px_ci() const { return wilson_interval(count_x, trials); }
    Interval pz_ci() const { return wilson_interval(count_z, trials); }
};

struct BatchResult {
    std::vector<PointResult> rows;
};

uint64_t trial_seed(uint64_t master, int d, const NoiseParams& params, int64_t trial);

BatchResult run_batch(const ExperimentConfig& config);

struct PairCrossing {
    int d_small;
    int d_large;
    bool found = false;
    double x = 0.0;
};

struct CrossingEstimate {
    bool found = false;
    double estimate = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool use_info = true;
    std::vector<PairCrossing> pairs;
    int bootstrap_samples = 0;
    int bootstrap_failures = 0;
};

// Crossing of the logical X rate curves for the rows with the given use_info.
CrossingEstimate estimate_crossing(const BatchResult& batch, bool use_info, uint64_t seed, int bootstrap = 400);

struct ScanResult {
    BatchResult batch;
    std::vector<CrossingEstimate> crossings;
};

ScanResult scan_threshold(const ExperimentConfig& config);

std::string to_csv(const BatchResult& batch);
std::string to_json(const ExperimentConfig& config, const BatchResult& batch,
                    const std::vector<CrossingEstimate>& crossings);

}  // namespace surface_gkp

#endif

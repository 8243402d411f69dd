#include "surface_gkp/oracles.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "surface_gkp/decoder.h"
#include "surface_gkp/experiment.h"

using namespace surface_gkp;

namespace {

std::string golden_path(const std::string& name) { return std::string(SURFACE_GKP_GOLDEN_DIR) + "/" + name; }

// Set SURFACE_GKP_REGEN_GOLDEN=1 to rewrite the files instead of comparing.
void check_golden(const std::string& name, const std::string& actual) {
    const std::string path = golden_path(name);
    if (std::getenv("SURFACE_GKP_REGEN_GOLDEN")) {
        std::ofstream(path) << actual;
        return;
    }
    std::ifstream f(path);
    ASSERT_TRUE(f) << "missing golden file " << path;
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_EQ(ss.str(), actual) << name;
}

}  // namespace

TEST(OraclePErr, AgreesWithSeries) {
    EXPECT_NEAR(oracle_p_err(0.3), p_err(Sigma(0.3)), 1e-10);
    const double v = oracle_p_err(0.194);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 0.5);
    EXPECT_THROW(oracle_p_err(0.0), std::invalid_argument);
}

TEST(OraclePErr, Monotone) {
    double prev = 0.0;
    for (int i = 1; i <= 20; ++i) {
        const double v = oracle_p_err(0.05 * i);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(OraclePCond, Boundary) {
    EXPECT_NEAR(oracle_p_cond(0.4, kSqrtPi / 2), 0.5, 1e-15);
    EXPECT_NEAR(oracle_p_cond(0.5, 0.6), 0.11618189507944911, 1e-14);
}

TEST(OracleMatching, Basics) {
    EXPECT_DOUBLE_EQ(oracle_matching({{0, 2.5}, {2.5, 0}}), 2.5);
    EXPECT_DOUBLE_EQ(oracle_matching({}), 0.0);
    EXPECT_THROW(oracle_matching(std::vector<std::vector<double>>(3, std::vector<double>(3, 1.0))),
                 std::invalid_argument);
    EXPECT_THROW(oracle_matching(std::vector<std::vector<double>>(12, std::vector<double>(12, 1.0))),
                 std::invalid_argument);
}

TEST(OracleMatching, AgreesWithBlossomOnEightVertices) {
    Rng rng(8);
    for (int seed = 0; seed < 1000; ++seed) {
        std::vector<std::vector<double>> w(8, std::vector<double>(8, 0.0));
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j) w[i][j] = w[j][i] = rng.uniform();
        const auto mate = mwpm(w);
        double total = 0.0;
        for (int i = 0; i < 8; ++i)
            if (mate[i] > i) total += w[i][mate[i]];
        EXPECT_NEAR(total, oracle_matching(w), 1e-12);
    }
}

TEST(OracleVariance, ZeroNoise) {
    const NoiseParams zero{Sigma(0.0), Sigma(0.0)};
    const VarianceReport r = oracle_variance(build_layout(3), zero, 100000, 1);
    for (const auto& row : r.rows) {
        EXPECT_EQ(row.analytic, 0.0);
        EXPECT_EQ(row.empirical, 0.0);
    }
    EXPECT_THROW(oracle_variance(build_layout(3), zero, 1000, 1), std::invalid_argument);
}

TEST(OracleVariance, EveryBranchWithinTwoPercent) {
    const NoiseParams p{Sigma(0.1), Sigma(0.1)};
    for (int d : {3, 5}) {
        const VarianceReport r = oracle_variance(build_layout(d), p, 100000, 11);
        EXPECT_EQ(r.rows.size(), 18u);
        std::set<std::pair<int, int>> seen;
        for (const auto& row : r.rows) {
            seen.insert({static_cast<int>(row.table), row.branch});
            EXPECT_GE(row.samples, 100000);
            EXPECT_LT(std::abs(row.rel_error), 0.02) << table_name(row.table) << " branch " << row.branch;
        }
        EXPECT_EQ(seen.size(), 18u);
        EXPECT_LT(r.worst_rel_error(), 0.02);
    }
}

TEST(OracleVariance, DeterministicGolden) {
    const NoiseParams p{Sigma(0.1), Sigma(0.1)};
    const std::string csv = variance_report_csv(oracle_variance(build_layout(3), p, 100000, 7));
    EXPECT_EQ(csv, variance_report_csv(oracle_variance(build_layout(3), p, 100000, 7)));
    check_golden("oracle_variance_d3.csv", csv);
}

TEST(GraphGolden, NoisyTrialDumpAndDecode) {
    const TrialRunner runner(3);
    const NoiseParams p{Sigma(0.12), Sigma(0.12)};
    Rng rng(trial_seed(2024, 3, p, 0));
    NoiseState state(runner.layout());
    const auto records = runner.simulate(p, rng, state);
    const GraphPair g = build_graphs(records, runner.layout(), p, true);
    std::string text = dump_graph(g.z) + dump_graph(g.x);
    for (const SpaceTimeGraph* s : {&g.z, &g.x}) {
        text += "flips";
        for (char f : decode(*s, 9).flips) text += f ? " 1" : " 0";
        text += "\n";
    }
    check_golden("graph_d3_case3.txt", text);
}

TEST(ExactVariances, ZeroRoundsIsSilent) {
    const ExactVariances ex = exact_variances(build_layout(3), 0);
    ASSERT_EQ(ex.h_z.size(), 1u);
    for (const auto& c : ex.h_z[0]) EXPECT_EQ(c, (VarianceCoeffs{}));
}

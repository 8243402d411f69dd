#include "surface_gkp/space_time_graph.h"

#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "surface_gkp/experiment.h"

using namespace surface_gkp;

namespace {

// Nominal sigmas feed the weights; the circuit itself is noiseless.
const NoiseParams kQuiet{Sigma(0.2), Sigma(0.1), false};

GraphPair graphs_with(const TrialRunner& runner, const std::vector<Fault>& faults, bool use_info = true) {
    Rng rng(1);
    NoiseState state(runner.layout());
    const auto records = runner.simulate(kQuiet, rng, state, faults);
    return build_graphs(records, runner.layout(), kQuiet, use_info);
}

}  // namespace

TEST(Weights, FromProbability) {
    EXPECT_DOUBLE_EQ(weight_from_probability(0.5), 1.0);
    EXPECT_DOUBLE_EQ(weight_from_probability(0.25), 2.0);
    EXPECT_DOUBLE_EQ(weight_from_probability(0.0), -std::log2(1e-30));
}

TEST(Weights, BoundaryResidueIsOne) {
    const SigmaTables t(5);
    const NoiseParams p{Sigma(0.15), Sigma(0.05)};
    for (int round : {1, 3, 6}) {
        EXPECT_NEAR(horizontal_weight(t, StabType::Z, 7, round, kSqrtPi / 2, p, true), 1.0, 1e-12);
        EXPECT_NEAR(horizontal_weight(t, StabType::X, 12, round, -kSqrtPi / 2, p, true), 1.0, 1e-12);
    }
    for (int l : {1, 2, 6, 12}) EXPECT_NEAR(vertical_weight(t, StabType::Z, l, kSqrtPi / 2, p, true), 1.0, 1e-12);
}

TEST(Weights, PlainBulk) {
    const SigmaTables t(5);
    const NoiseParams p{Sigma(0.15), Sigma(0.05)};
    const double sh = std::sqrt(5 * 0.0225 + 59.0 / 3 * 0.0025);
    const double sv = std::sqrt(7 * 0.0225 + 116.0 / 3 * 0.0025);
    for (int round = 2; round <= 5; ++round)
        EXPECT_DOUBLE_EQ(horizontal_weight(t, StabType::Z, 13, round, 0.3, p, false), -std::log2(p_err(Sigma(sh))));
    EXPECT_DOUBLE_EQ(vertical_weight(t, StabType::Z, 2, 0.1, p, false), -std::log2(p_err(Sigma(sv))));
}

TEST(Weights, InfoUsesConditional) {
    const SigmaTables t(3);
    const NoiseParams p{Sigma(0.2), Sigma(0.0)};
    const double s1 = std::sqrt(0.04);  // round 1, step 1
    EXPECT_DOUBLE_EQ(horizontal_weight(t, StabType::Z, 1, 1, 0.4, p, true), -std::log2(p_cond(Sigma(s1), 0.4)));
}

TEST(Weights, ZeroSigmaIsCapped) {
    const SigmaTables t(3);
    const NoiseParams zero{Sigma(0.0), Sigma(0.0)};
    const double cap = -std::log2(kProbabilityFloor);
    EXPECT_DOUBLE_EQ(horizontal_weight(t, StabType::Z, 5, 2, 0.0, zero, true), cap);
    EXPECT_DOUBLE_EQ(horizontal_weight(t, StabType::Z, 5, 2, 0.0, zero, false), cap);
    EXPECT_DOUBLE_EQ(vertical_weight(t, StabType::X, 1, 0.0, zero, true), cap);
    const NoiseParams tiny{Sigma(1e-3), Sigma(1e-3)};
    EXPECT_DOUBLE_EQ(horizontal_weight(t, StabType::Z, 5, 2, 0.0, tiny, true), cap);
}

TEST(Weights, ModelMatchesFreeFunctions) {
    const CodeLayout l = build_layout(5);
    const SigmaTables t(5);
    const NoiseParams p{Sigma(0.1), Sigma(0.08)};
    for (bool info : {false, true}) {
        const WeightModel m(l, p, info);
        for (StabType g : {StabType::Z, StabType::X})
            for (int k = 1; k <= 25; ++k)
                for (int round : {1, 2, 5, 6}) {
                    const double z = 0.03 * k - 0.4;
                    EXPECT_DOUBLE_EQ(m.horizontal(g, k - 1, round, z), horizontal_weight(t, g, k, round, z, p, info));
                }
        for (int ll = 1; ll <= 12; ++ll)
            EXPECT_DOUBLE_EQ(m.vertical(StabType::X, ll - 1, 0.2), vertical_weight(t, StabType::X, ll, 0.2, p, info));
    }
}

TEST(Topology, Structure) {
    for (int d : {3, 5, 7}) {
        const CodeLayout l = build_layout(d);
        for (StabType type : {StabType::Z, StabType::X}) {
            const auto topo = make_topology(l, type);
            EXPECT_EQ(topo->n_layers, d + 1);
            EXPECT_EQ(topo->n_vertices, l.n_synd * (d + 1) + 1);
            const auto h = std::count_if(topo->edges.begin(), topo->edges.end(),
                                         [](const GraphEdge& e) { return e.kind == EdgeKind::Horizontal; });
            EXPECT_EQ(h, static_cast<long>(l.n_data) * (d + 1));
            EXPECT_EQ(static_cast<long>(topo->edges.size()) - h, static_cast<long>(l.n_synd) * d);
            // d boundary-touching data qubits per side, two sides.
            const auto b = std::count_if(topo->edges.begin(), topo->edges.end(), [&](const GraphEdge& e) {
                return e.layer == 1 && e.v == topo->boundary;
            });
            EXPECT_EQ(b, 2 * d);
        }
    }
}

TEST(BuildGraphs, ZeroNoiseHasNoDefects) {
    const TrialRunner runner(5);
    const GraphPair g = graphs_with(runner, {});
    EXPECT_TRUE(g.z.defects.empty());
    EXPECT_TRUE(g.x.defects.empty());
    EXPECT_FALSE(g.z.boundary_highlighted);
}

TEST(BuildGraphs, MeasurementErrorGivesVerticalPair) {
    const TrialRunner runner(5);
    const auto& topo = *make_topology(runner.layout(), StabType::Z);
    for (int t = 1; t <= 5; ++t) {
        const GraphPair g = graphs_with(runner, {{Fault::FlipZ, t, 7}});
        EXPECT_EQ(g.z.defects, (std::vector<int>{topo.vertex(7, t), topo.vertex(7, t + 1)}));
        EXPECT_TRUE(g.x.defects.empty());
    }
}

TEST(BuildGraphs, DataErrorGivesHorizontalPair) {
    const TrialRunner runner(5);
    const CodeLayout& l = runner.layout();
    for (int k = 0; k < l.n_data; ++k) {
        const int round = 1 + k % 5;
        const GraphPair g = graphs_with(runner, {{Fault::DataQ, round, k}});
        const auto& synd = l.z_of_data[k];
        std::vector<int> want;
        for (int s : synd) want.push_back(g.z.topo->vertex(s, round));
        std::sort(want.begin(), want.end());
        EXPECT_EQ(g.z.defects, want) << "k=" << k;
        EXPECT_EQ(g.z.boundary_highlighted, synd.size() == 1);
        EXPECT_TRUE(g.x.defects.empty());
    }
}

TEST(BuildGraphs, MomentumErrorLandsInXGraph) {
    const TrialRunner runner(3);
    const GraphPair g = graphs_with(runner, {{Fault::DataP, 2, 4}});
    EXPECT_EQ(g.x.defects.size(), 2u);
    EXPECT_TRUE(g.z.defects.empty());
}

TEST(BuildGraphs, RejectsWrongRecordCount) {
    const CodeLayout l = build_layout(3);
    std::vector<RoundRecord> records(3, RoundRecord(l));
    EXPECT_THROW(build_graphs(records, l, kQuiet, true), std::invalid_argument);
}

TEST(BuildGraphs, NoisyWeightsValid) {
    const TrialRunner runner(5);
    const NoiseParams p{Sigma(0.25), Sigma(0.05)};
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        NoiseState state(runner.layout());
        const auto records = runner.simulate(p, rng, state);
        const GraphPair g = build_graphs(records, runner.layout(), p, trial % 2 == 0);
        for (const SpaceTimeGraph* s : {&g.z, &g.x}) {
            for (double w : s->weights) {
                EXPECT_TRUE(std::isfinite(w));
                EXPECT_GE(w, 0.0);
            }
            EXPECT_EQ((s->defects.size() + (s->boundary_highlighted ? 1 : 0)) % 2, 0u);
            EXPECT_TRUE(std::is_sorted(s->defects.begin(), s->defects.end()));
        }
    }
}

TEST(DumpGraph, Format) {
    const TrialRunner runner(3);
    const GraphPair g = graphs_with(runner, {{Fault::FlipZ, 2, 1}}, false);
    const std::string dump = dump_graph(g.z);
    EXPECT_EQ(dump, dump_graph(graphs_with(runner, {{Fault::FlipZ, 2, 1}}, false).z));
    EXPECT_EQ(dump.rfind("graph Z d 3 vertices 17 boundary 16 edges 48\n", 0), 0u);
    EXPECT_NE(dump.find("\ndefects 5 9\n"), std::string::npos);
    // Plain weights: round-1 step-1 horizontal edge of data 1, printed to 12 significant digits.
    const double w = -std::log2(p_err(Sigma(std::sqrt(0.04 + 10.0 / 3 * 0.01))));
    char line[64];
    std::snprintf(line, sizeof line, "H 0 16 1 1 %.12g\n", w);
    EXPECT_NE(dump.find(line), std::string::npos) << line;
}

#include "surface_gkp/layout.h"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <vector>

#include "gtest/gtest.h"

using namespace surface_gkp;

namespace {

std::vector<int> one_based(const std::vector<int>& v) {
    std::vector<int> out;
    for (int k : v) out.push_back(k + 1);
    return out;
}

// Spatial index of the syndrome whose centre is at (row2, col2).
int at_center(const std::vector<std::pair<int, int>>& centers, int row2, int col2) {
    for (size_t i = 0; i < centers.size(); ++i)
        if (centers[i] == std::make_pair(row2, col2)) return static_cast<int>(i);
    return -1;
}

}  // namespace

TEST(BuildLayout, RejectsBadDistance) {
    EXPECT_THROW(build_layout(4), std::invalid_argument);
    EXPECT_THROW(build_layout(1), std::invalid_argument);
    EXPECT_THROW(build_layout(-3), std::invalid_argument);
}

TEST(BuildLayout, Counts) {
    for (int d : {3, 5, 7, 9, 11}) {
        const CodeLayout l = build_layout(d);
        EXPECT_EQ(l.n_data, d * d);
        EXPECT_EQ(l.n_synd, (d * d - 1) / 2);
        EXPECT_EQ(static_cast<int>(l.z_support.size()), l.n_synd);
        EXPECT_EQ(static_cast<int>(l.x_support.size()), l.n_synd);
    }
}

TEST(BuildLayout, ZSupportsD3) {
    const CodeLayout l = build_layout(3);
    const std::vector<std::vector<int>> expected{{1, 4}, {2, 3, 5, 6}, {4, 5, 7, 8}, {6, 9}};
    for (int i = 0; i < 4; ++i) EXPECT_EQ(one_based(l.z_support[i]), expected[i]);
}

TEST(BuildLayout, XSupportsD3) {
    const CodeLayout l = build_layout(3);
    std::set<std::vector<int>> got;
    for (const auto& s : l.x_support) got.insert(one_based(s));
    const std::set<std::vector<int>> expected{{1, 2, 4, 5}, {2, 3}, {7, 8}, {5, 6, 8, 9}};
    EXPECT_EQ(got, expected);
}

TEST(BuildLayout, XSignPatternD3) {
    // (X1)^dag X2 X4 (X5)^dag
    const CodeLayout l = build_layout(3);
    const int x = at_center(l.x_center, 1, 1);
    ASSERT_GE(x, 0);
    EXPECT_EQ(one_based(l.x_support[x]), (std::vector<int>{1, 2, 4, 5}));
    EXPECT_EQ(l.x_support_sign[x], (std::vector<int>{-1, 1, 1, -1}));
}

TEST(BuildLayout, StepThreeScheduleD3) {
    const CodeLayout l = build_layout(3);
    EXPECT_EQ(schedule_labels(l, StabType::Z, 0), (std::vector<int>{1, 3, 5, 0}));
    // First spatial X-syndrome (top-left plaquette) starts on data 2.
    const int x1 = at_center(l.x_center, 1, 1);
    EXPECT_EQ(l.x_schedule[x1][0] + 1, 2);
    // Same multiset as the printed array.
    auto x_step3 = schedule_labels(l, StabType::X, 0);
    std::sort(x_step3.begin(), x_step3.end());
    EXPECT_EQ(x_step3, (std::vector<int>{0, 2, 6, 8}));
}

TEST(BuildLayout, ScheduleInvariants) {
    for (int d : {3, 5, 7, 9}) {
        const CodeLayout l = build_layout(d);
        for (StabType type : {StabType::Z, StabType::X}) {
            const auto& sched = l.schedule(type);
            const auto& supp = l.support(type);
            for (size_t s = 0; s < sched.size(); ++s) {
                std::vector<int> touched;
                int idle = 0;
                for (int k : sched[s]) {
                    if (k == kIdle)
                        ++idle;
                    else
                        touched.push_back(k);
                }
                std::sort(touched.begin(), touched.end());
                EXPECT_EQ(touched, supp[s]);
                EXPECT_EQ(idle, 4 - static_cast<int>(supp[s].size()));
                EXPECT_EQ(supp[s].size() % 2, 0u);
            }
        }
        for (int t = 0; t < kSurfaceSteps; ++t) {
            std::vector<int> used(l.n_data, 0);
            for (const auto& s : l.z_schedule)
                if (s[t] != kIdle) ++used[s[t]];
            for (const auto& s : l.x_schedule)
                if (s[t] != kIdle) ++used[s[t]];
            EXPECT_LE(*std::max_element(used.begin(), used.end()), 1) << "d=" << d << " step " << t + 3;
        }
    }
}

TEST(BuildLayout, BulkCoverage) {
    for (int d : {3, 5, 7}) {
        const CodeLayout l = build_layout(d);
        for (int k = 0; k < l.n_data; ++k) {
            EXPECT_GE(l.z_of_data[k].size(), 1u);
            EXPECT_LE(l.z_of_data[k].size(), 2u);
            EXPECT_LE(l.x_of_data[k].size(), 2u);
            const int r = l.row(k);
            if (r > 0 && r < d - 1) EXPECT_EQ(l.z_of_data[k].size(), 2u);
        }
    }
}

TEST(BuildLayout, StabilizersCommute) {
    for (int d : {3, 5, 7}) {
        const CodeLayout l = build_layout(d);
        for (size_t z = 0; z < l.z_support.size(); ++z)
            for (size_t x = 0; x < l.x_support.size(); ++x)
                EXPECT_EQ(symplectic_overlap(l.z_support[z], l.x_support[x], l.x_support_sign[x]) % 2, 0);
    }
}

TEST(ValidateLayout, PassesForOddDistances) {
    for (int d : {3, 5, 7, 9}) {
        const CodeLayout l = build_layout(d);
        PropagationReport report;
        ASSERT_NO_THROW(report = validate_layout(l)) << "d=" << d;
        EXPECT_TRUE(report.ok());
        for (const auto& row : report.x_to_z)
            for (int v : row) EXPECT_EQ(v, 0);
        for (const auto& row : report.z_to_x)
            for (int v : row) EXPECT_EQ(v, 0);
    }
}

TEST(ValidateLayout, X4ToZ2CancelsAtD3) {
    const CodeLayout l = build_layout(3);
    const int x4 = at_center(l.x_center, 3, 3);
    const int z2 = at_center(l.z_center, 1, 3);
    ASSERT_GE(x4, 0);
    ASSERT_GE(z2, 0);
    EXPECT_EQ(one_based(l.x_support[x4]), (std::vector<int>{5, 6, 8, 9}));
    EXPECT_EQ(one_based(l.z_support[z2]), (std::vector<int>{2, 3, 5, 6}));
    EXPECT_EQ(propagate_syndrome_shifts(l).x_to_z[x4][z2], 0);
}

TEST(ValidateLayout, DetectsFlippedGateSign) {
    const CodeLayout base = build_layout(3);
    int mutations = 0;
    for (size_t x = 0; x < base.x_schedule.size(); ++x)
        for (int t = 0; t < kSurfaceSteps; ++t) {
            if (base.x_sign[x][t] != -1) continue;
            CodeLayout l = base;
            l.x_sign[x][t] = 1;
            ++mutations;
            try {
                validate_layout(l);
                ADD_FAILURE() << "mutation at X" << x + 1 << " step " << t + 3 << " not detected";
            } catch (const LayoutError& e) {
                int worst = 0;
                for (const auto* m : {&e.report().x_to_z, &e.report().z_to_x})
                    for (const auto& row : *m)
                        for (int v : row) worst = std::max(worst, std::abs(v));
                EXPECT_EQ(worst, 2);
                EXPECT_NE(std::string(e.what()).find("X-syndrome"), std::string::npos);
            }
        }
    EXPECT_GT(mutations, 0);
}

TEST(ValidateLayout, DetectsSwappedSteps) {
    CodeLayout l = build_layout(5);
    std::swap(l.z_schedule[4][1], l.z_schedule[4][2]);
    EXPECT_THROW(validate_layout(l), LayoutError);
}

TEST(LogicalRepresentatives, D3Column) {
    const auto reps = logical_representatives(build_layout(3));
    EXPECT_EQ(one_based(reps.logical_x), (std::vector<int>{1, 4, 7}));
    EXPECT_EQ(one_based(reps.logical_z), (std::vector<int>{1, 2, 3}));
}

TEST(LogicalRepresentatives, CommuteAndAnticommute) {
    for (int d : {3, 5, 7, 9}) {
        const CodeLayout l = build_layout(d);
        const auto reps = logical_representatives(l);
        EXPECT_EQ(static_cast<int>(reps.logical_x.size()), d);
        EXPECT_EQ(static_cast<int>(reps.logical_z.size()), d);
        for (const auto& z : l.z_support) EXPECT_EQ(symplectic_overlap(z, reps.logical_x, {}) % 2, 0);
        for (size_t x = 0; x < l.x_support.size(); ++x)
            EXPECT_EQ(symplectic_overlap(reps.logical_z, l.x_support[x], l.x_support_sign[x]) % 2, 0);
        EXPECT_EQ(std::abs(symplectic_overlap(reps.logical_z, reps.logical_x, {})) % 2, 1);
    }
}

TEST(LayoutDump, Deterministic) {
    EXPECT_EQ(layout_to_text(build_layout(5)), layout_to_text(build_layout(5)));
    EXPECT_EQ(layout_to_json(build_layout(5)), layout_to_json(build_layout(5)));
}

TEST(LayoutDump, GoldenD3) {
    const std::string expected =
        "d 3\n"
        "data 9\n"
        "syndromes_per_type 4\n"
        "z_boundary top bottom\n"
        "x_boundary left right\n"
        "Z 1 center 1 -1 support 1 4 schedule 1 4 0 0\n"
        "Z 2 center 1 3 support 2 3 5 6 schedule 3 6 2 5\n"
        "Z 3 center 3 1 support 4 5 7 8 schedule 5 8 4 7\n"
        "Z 4 center 3 5 support 6 9 schedule 0 0 6 9\n"
        "X 1 center 1 1 support 1 2 4 5 schedule 2 1 5 4 signs 1 -1 -1 1\n"
        "X 2 center 5 1 support 7 8 schedule 8 7 0 0 signs 1 -1 0 0\n"
        "X 3 center -1 3 support 2 3 schedule 0 0 3 2 signs 0 0 -1 1\n"
        "X 4 center 3 3 support 5 6 8 9 schedule 6 5 9 8 signs 1 -1 -1 1\n";
    EXPECT_EQ(layout_to_text(build_layout(3)), expected);
}

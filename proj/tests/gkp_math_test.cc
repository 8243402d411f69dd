#include "surface_gkp/gkp_math.h"

#include <cmath>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "surface_gkp/oracles.h"

using namespace surface_gkp;

TEST(CenteredMod, Examples) {
    EXPECT_EQ(centered_mod(kSqrtPi, kSqrtPi), 0.0);
    EXPECT_EQ(centered_mod(0.0, kSqrtPi), 0.0);
    EXPECT_NEAR(centered_mod(0.9, kSqrtPi), -0.87245385090551601, 1e-14);
    EXPECT_NEAR(centered_mod(-0.9, kSqrtPi), 0.87245385090551601, 1e-14);
    EXPECT_NEAR(centered_mod(4.0, 2 * kSqrtPi), 0.45509229818896795, 1e-14);
}

TEST(CenteredMod, RangeAndPeriodicity) {
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        const double z = 40.0 * (rng.uniform() - 0.5);
        const double r = centered_mod(z, kSqrtPi);
        EXPECT_GE(r, -kSqrtPi / 2);
        EXPECT_LT(r, kSqrtPi / 2);
        const double n = (z - r) / kSqrtPi;
        EXPECT_NEAR(n, std::round(n), 1e-9);
        EXPECT_NEAR(centered_mod(z + 3 * kSqrtPi, kSqrtPi), r, 1e-12);
    }
}

TEST(CenteredMod, RejectsBadInput) {
    EXPECT_THROW(centered_mod(std::nan(""), kSqrtPi), std::invalid_argument);
    EXPECT_THROW(centered_mod(std::numeric_limits<double>::infinity(), 1.0), std::invalid_argument);
    EXPECT_THROW(centered_mod(1.0, 0.0), std::invalid_argument);
}

TEST(Sigma, RejectsNegative) {
    EXPECT_THROW(Sigma(-0.1), std::invalid_argument);
    EXPECT_THROW(Sigma(std::nan("")), std::invalid_argument);
    EXPECT_EQ(Sigma(0.0).value, 0.0);
}

TEST(PErr, Limits) {
    EXPECT_EQ(p_err(Sigma(0.0)), 0.0);
    EXPECT_NEAR(p_err(Sigma(50.0)), 0.5, 1e-6);
}

TEST(PErr, FrozenValues) {
    // Independent 30-digit series evaluation.
    EXPECT_NEAR(p_err(Sigma(0.3)), 0.0031359278942524099, 1e-15);
    EXPECT_NEAR(p_err(Sigma(0.5)), 0.076319144174318299, 1e-15);
    EXPECT_NEAR(p_err(Sigma(1.0)), 0.36765990526229347, 1e-15);
    EXPECT_NEAR(p_err(Sigma(0.194)) / 4.9197739133802173e-6, 1.0, 1e-12);
}

TEST(PErr, MatchesQuadratureOracle) {
    for (double s : {0.05, 0.1, 0.194, 0.3, 0.45, 0.7, 1.0, 2.0}) {
        EXPECT_NEAR(p_err(Sigma(s)), oracle_p_err(s), 1e-12) << "sigma=" << s;
    }
}

TEST(PErr, MonotoneInSigma) {
    double prev = 0.0;
    for (int i = 1; i <= 40; ++i) {
        const double v = p_err(Sigma(0.05 * i));
        EXPECT_GT(v, prev);
        EXPECT_LT(v, 0.5);
        prev = v;
    }
}

TEST(PAsy, Values) {
    EXPECT_EQ(p_asy(Sigma(0.0)), 0.0);
    EXPECT_NEAR(p_asy(Sigma(0.5)), 0.046789343596104457, 1e-15);
    EXPECT_NEAR(p_asy(Sigma(0.3)), 0.0010319780787732295, 1e-15);
}

// The erfc tail gives sqrt(8) sigma / pi * exp(-pi / 8 sigma^2) at leading
// order; p_asy carries one extra power of sigma.
TEST(PAsy, ApproachesPErrForSmallSigma) {
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double s : {0.4, 0.3, 0.2, 0.15}) {
        const double gap = std::abs(p_err(Sigma(s)) / (p_asy(Sigma(s)) / s) - 1.0);
        EXPECT_LT(gap, prev_gap) << "sigma=" << s;
        prev_gap = gap;
    }
    EXPECT_LT(prev_gap, 0.05);
}

TEST(PAsy, PrintedFormIsOffBySigma) {
    for (double s : {0.15, 0.2, 0.3}) EXPECT_NEAR(p_err(Sigma(s)) * s / p_asy(Sigma(s)), 1.0, 0.11);
}

TEST(PCond, BoundaryIsHalf) {
    for (double s : {0.05, 0.2, 0.5, 1.5}) {
        EXPECT_NEAR(p_cond(Sigma(s), kSqrtPi / 2), 0.5, 1e-12);
        EXPECT_NEAR(p_cond(Sigma(s), -kSqrtPi / 2), 0.5, 1e-12);
    }
}

TEST(PCond, Symmetric) {
    for (double s : {0.1, 0.3, 0.8})
        for (double z : {0.0, 0.1, 0.4, 0.7, 0.88}) EXPECT_NEAR(p_cond(Sigma(s), z), p_cond(Sigma(s), -z), 1e-15);
}

TEST(PCond, FrozenValues) {
    EXPECT_NEAR(p_cond(Sigma(0.5), 0.6), 0.11618189507944911, 1e-12);
    EXPECT_NEAR(p_cond(Sigma(0.5), 0.3), 0.015640433025168045, 1e-12);
    EXPECT_NEAR(p_cond(Sigma(0.3), 0.8), 0.15470740916638155, 1e-12);
    EXPECT_NEAR(p_cond(Sigma(0.3), 0.0) / 5.2621271805494948e-8, 1.0, 1e-10);
}

TEST(PCond, MatchesWideOracle) {
    for (double s : {0.1, 0.3, 0.5, 1.2})
        for (double z : {0.0, 0.2, 0.6, 0.85}) EXPECT_NEAR(p_cond(Sigma(s), z), oracle_p_cond(s, z), 1e-12);
}

TEST(PCond, ZeroSigma) {
    EXPECT_EQ(p_cond(Sigma(0.0), 0.0), 0.0);
    EXPECT_THROW(p_cond(Sigma(0.0), 0.1), std::invalid_argument);
}

TEST(PCond, AveragesToPErr) {
    const double s = 0.45;
    const int n = 1000000;
    Rng rng(2024);
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = p_cond(Sigma(s), centered_mod(s * rng.normal(), kSqrtPi));
        sum += v;
        sum2 += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum2 / n - mean * mean) / n);
    EXPECT_LT(std::abs(mean - p_err(Sigma(s))), 3 * se);
}

TEST(Squeezing, PaperValues) {
    EXPECT_NEAR(sigma_to_db(Sigma(0.194)).value, 11.2, 0.05);
    EXPECT_NEAR(sigma_to_db(Sigma(0.083)).value, 18.6, 0.05);
    EXPECT_NEAR(sigma_to_db(Sigma(1.0 / std::sqrt(2.0))).value, 0.0, 1e-14);
}

TEST(Squeezing, RoundTrip) {
    for (double s = 0.01; s < 1.0; s += 0.0137) {
        EXPECT_NEAR(db_to_sigma(sigma_to_db(Sigma(s))).value, s, 1e-12 * s);
    }
    for (double db = -3.0; db < 30.0; db += 0.71) {
        EXPECT_NEAR(sigma_to_db(db_to_sigma({db})).value, db, 1e-12);
    }
    EXPECT_THROW(sigma_to_db(Sigma(0.0)), std::invalid_argument);
}

TEST(DeltaToSigma, Values) {
    EXPECT_NEAR(delta_to_sigma(0.1).value, 0.22351370194661439, 1e-15);
    EXPECT_NEAR(std::pow(delta_to_sigma(1e-6).value, 2) / 5e-7, 1.0, 1e-6);
    EXPECT_NEAR(delta_to_sigma(60.0).value, 1.0, 1e-12);
    EXPECT_THROW(delta_to_sigma(0.0), std::invalid_argument);
}

TEST(SampleGaussian, ZeroVarianceConsumesNothing) {
    Rng a(5), b(5);
    EXPECT_EQ(sample_gaussian(a, 0.0), 0.0);
    const auto v = sample_gaussian(a, Cov2{});
    EXPECT_EQ(v[0], 0.0);
    EXPECT_EQ(v[1], 0.0);
    EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(SampleGaussian, Reproducible) {
    Rng a(77), b(77);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_gaussian(a, 0.3), sample_gaussian(b, 0.3));
}

TEST(SampleGaussian, CovarianceWithinOnePercent) {
    const Cov2 cov{4.0 / 3.0, -0.5, 1.0};
    Rng rng(99);
    const int n = 1000000;
    double xx = 0, xy = 0, yy = 0;
    for (int i = 0; i < n; ++i) {
        const auto s = sample_gaussian(rng, cov);
        xx += s[0] * s[0];
        xy += s[0] * s[1];
        yy += s[1] * s[1];
    }
    EXPECT_NEAR(xx / n, cov.xx, 0.01 * cov.xx);
    EXPECT_NEAR(xy / n, cov.xy, 0.01 * std::abs(cov.xy));
    EXPECT_NEAR(yy / n, cov.yy, 0.01 * cov.yy);
}

TEST(SampleGaussian, RejectsNonPsd) {
    Rng rng(1);
    EXPECT_THROW(sample_gaussian(rng, Cov2{1.0, 2.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(sample_gaussian(rng, -1.0), std::invalid_argument);
}

TEST(DeriveSeed, DistinctKeys) {
    EXPECT_NE(derive_seed({1, 2, 3}), derive_seed({1, 3, 2}));
    EXPECT_NE(derive_seed({0}), derive_seed({0, 0}));
    EXPECT_EQ(derive_seed({9, 8}), derive_seed({9, 8}));
}

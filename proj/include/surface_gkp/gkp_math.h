#ifndef SURFACE_GKP_GKP_MATH_H
#define SURFACE_GKP_GKP_MATH_H

#include <array>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace surface_gkp {

inline constexpr double kSqrtPi = 1.77245385090551602730;

// Standard deviation of a Gaussian quadrature shift. Units where sqrt(pi)
// is one logical shift.
struct Sigma {
    double value = 0.0;

    Sigma() = default;
    explicit Sigma(double v);
};

struct SqueezingDb {
    double value = 0.0;
};

// Symmetric 2x2 covariance, entries in quadrature units squared.
struct Cov2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    Cov2 scaled(double factor) const { return {xx * factor, xy * factor, yy * factor}; }
};

// Lower-triangular factor of a Cov2, precomputed for the sampling hot path.
struct Chol2 {
    double l11 = 0.0;
    double l21 = 0.0;
    double l22 = 0.0;

    static Chol2 of(const Cov2& cov);
    bool is_zero() const { return l11 == 0.0 && l21 == 0.0 && l22 == 0.0; }
};

// R_s(z) = z - s * floor(z / s + 1/2), in [-s/2, s/2).
double centered_mod(double z, double s);

// Probability that xi ~ N(0, sigma^2) lands in an odd sqrt(pi) bin.
double p_err(Sigma sigma);

// Small-sigma asymptote of p_err.
double p_asy(Sigma sigma);

// Probability of an odd bin given the observed residue z = R_sqrt(pi)(xi).
double p_cond(Sigma sigma, double z);

SqueezingDb sigma_to_db(Sigma sigma);
Sigma db_to_sigma(SqueezingDb s);
Sigma delta_to_sigma(double delta);

// SplitMix64 finalizer; used to derive independent stream seeds.
uint64_t splitmix64(uint64_t x);
uint64_t derive_seed(std::initializer_list<uint64_t> keys);

class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    uint64_t next_u64() { return engine_(); }
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

// Zero variance returns 0 without consuming randomness.
double sample_gaussian(Rng& rng, double variance);
std::array<double, 2> sample_gaussian(Rng& rng, const Cov2& cov);
std::array<double, 2> sample_gaussian(Rng& rng, const Chol2& chol);

}  // namespace surface_gkp

#endif

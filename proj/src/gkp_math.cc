#include "surface_gkp/gkp_math.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace surface_gkp {

namespace {

constexpr double kTruncation = 1e-18;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

}  // namespace

Sigma::Sigma(double v) : value(v) {
    if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("sigma must be finite and non-negative, got " + std::to_string(v));
    }
}

Chol2 Chol2::of(const Cov2& cov) {
    const double scale = std::max({std::abs(cov.xx), std::abs(cov.yy), std::abs(cov.xy), 1e-300});
    const double det = cov.xx * cov.yy - cov.xy * cov.xy;
    if (cov.xx < 0.0 || cov.yy < 0.0 || det < -1e-12 * scale * scale) {
        throw std::invalid_argument("covariance matrix is not positive semidefinite");
    }
    Chol2 out;
    if (cov.xx == 0.0) {
        if (cov.xy != 0.0) {
            throw std::invalid_argument("covariance matrix is not positive semidefinite");
        }
        out.l22 = std::sqrt(cov.yy);
        return out;
    }
    out.l11 = std::sqrt(cov.xx);
    out.l21 = cov.xy / out.l11;
    out.l22 = std::sqrt(std::max(0.0, cov.yy - out.l21 * out.l21));
    return out;
}

double centered_mod(double z, double s) {
    require_finite(z, "z");
    if (!std::isfinite(s) || s <= 0.0) {
        throw std::invalid_argument("modulus must be positive and finite");
    }
    double r = z - s * std::floor(z / s + 0.5);
    // Guard the half-open interval against rounding at the edges.
    if (r >= 0.5 * s) r -= s;
    if (r < -0.5 * s) r += s;
    return r;
}

double p_err(Sigma sigma) {
    const double s = sigma.value;
    if (s == 0.0) return 0.0;
    // Odd bins are [(2n+1/2), (2n+3/2)] * sqrt(pi); the n < 0 bins mirror n >= 0.
    const double scale = 1.0 / (s * std::sqrt(2.0));
    double total = 0.0;
    for (long n = 0;; ++n) {
        const double a = (2.0 * n + 0.5) * kSqrtPi * scale;
        const double b = (2.0 * n + 1.5) * kSqrtPi * scale;
        const double term = std::erfc(a) - std::erfc(b);
        total += term;
        if (term <= kTruncation * total) break;
        if (n > 100000000) throw std::runtime_error("p_err series failed to converge");
    }
    return total;
}

double p_asy(Sigma sigma) {
    const double s2 = sigma.value * sigma.value;
    if (s2 == 0.0) return 0.0;
    return std::sqrt(8.0) * s2 / M_PI * std::exp(-M_PI / (8.0 * s2));
}

double p_cond(Sigma sigma, double z) {
    require_finite(z, "z");
    const double s = sigma.value;
    if (s == 0.0) {
        if (z == 0.0) return 0.0;
        throw std::invalid_argument("p_cond is undefined for sigma = 0 and z != 0");
    }
    // Exponents are shifted by the nearest lattice point so tiny sigma does not underflow.
    const double inv = 1.0 / (2.0 * s * s);
    const long n0 = std::lround(z / kSqrtPi);
    const double d0 = z - n0 * kSqrtPi;
    const double base = d0 * d0;
    double num = 0.0;
    double den = 0.0;
    auto add = [&](long n) {
        const double dz = z - n * kSqrtPi;
        const double t = std::exp(-(dz * dz - base) * inv);
        den += t;
        if (n % 2 != 0) num += t;
        return t;
    };
    add(n0);
    for (long j = 1;; ++j) {
        const double t = add(n0 + j) + add(n0 - j);
        if (t <= kTruncation * den) break;
        if (j > 100000000) throw std::runtime_error("p_cond series failed to converge");
    }
    return num / den;
}

SqueezingDb sigma_to_db(Sigma sigma) {
    if (sigma.value <= 0.0) throw std::invalid_argument("squeezing needs sigma > 0");
    return {-10.0 * std::log10(2.0 * sigma.value * sigma.value)};
}

Sigma db_to_sigma(SqueezingDb s) {
    require_finite(s.value, "squeezing");
    return Sigma(std::sqrt(0.5 * std::pow(10.0, -s.value / 10.0)));
}

Sigma delta_to_sigma(double delta) {
    if (!std::isfinite(delta) || delta <= 0.0) throw std::invalid_argument("delta must be positive");
    // (1 - e^-D) / (1 + e^-D) == tanh(D / 2)
    return Sigma(std::sqrt(std::tanh(0.5 * delta)));
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t derive_seed(std::initializer_list<uint64_t> keys) {
    uint64_t h = 0x6a09e667f3bcc908ULL;
    for (uint64_t k : keys) h = splitmix64(h ^ splitmix64(k));
    return h;
}

double sample_gaussian(Rng& rng, double variance) {
    if (!(variance >= 0.0)) throw std::invalid_argument("variance must be non-negative");
    if (variance == 0.0) return 0.0;
    return std::sqrt(variance) * rng.normal();
}

std::array<double, 2> sample_gaussian(Rng& rng, const Cov2& cov) {
    return sample_gaussian(rng, Chol2::of(cov));
}

std::array<double, 2> sample_gaussian(Rng& rng, const Chol2& chol) {
    if (chol.is_zero()) return {0.0, 0.0};
    const double u = rng.normal();
    const double v = rng.normal();
    return {chol.l11 * u, chol.l21 * u + chol.l22 * v};
}

}  // namespace surface_gkp

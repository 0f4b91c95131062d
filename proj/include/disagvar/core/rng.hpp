#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

#include "disagvar/core/errors.hpp"

namespace disagvar::rng {

inline constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

// splitmix64 finalizer (Stafford mix13). Advances *state* variants below.
inline std::uint64_t mix64(std::uint64_t z) {
    z += golden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += golden;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Standard normal quantile, Wichura's algorithm (AS 241, double precision).
// The two-argument form takes q = 1-p computed without cancellation by the
// caller, which keeps deep right-tail quantiles accurate.
inline double norm_ppf2(double p, double q) {
    if (!(p > 0.0) || !(q > 0.0))
        throw numeric_error("normal quantile requires p in (0,1)");
    const double qc = p - 0.5;
    if (qc >= -0.425 && qc <= 0.425) {
        const double r = 0.180625 - qc * qc;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return qc * num / den;
    }
    const double pm = p < q ? p : q;
    double r = std::sqrt(-std::log(pm));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        z = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        z = num / den;
    }
    return p < q ? -z : z;
}

inline double norm_ppf(double p) { return norm_ppf2(p, 1.0 - p); }

inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

// xoshiro256++ with splitmix64 seeding. Hand-rolled so byte streams are
// identical across standard library implementations.
class Stream {
public:
    Stream() : Stream(0) {}

    explicit Stream(std::uint64_t key) {
        std::uint64_t sm = key;
        for (auto& w : s_) w = splitmix64(sm);
    }

    // One stream per (seed, logical path); derived streams are independent
    // and insensitive to the draw order of sibling streams.
    static Stream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
        std::uint64_t k = mix64(seed);
        for (std::uint64_t e : path) k = mix64(k ^ mix64(e));
        return Stream(k);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() { return norm_ppf(uniform01()); }

    double normal(double mu, double sd) { return mu + sd * normal(); }

    // Marsaglia-Tsang squeeze; the only rejection sampler in the stack.
    double gamma(double shape) {
        if (!(shape > 0.0)) throw numeric_error("gamma shape must be positive");
        if (shape < 1.0) {
            const double u = uniform01();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Inverse gamma with density b^a/Gamma(a) x^{-a-1} exp(-b/x).
    double inv_gamma(double shape, double rate) {
        if (!(rate > 0.0)) throw numeric_error("inverse-gamma rate must be positive");
        return rate / gamma(shape);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

namespace detail {

// Sample Z | Z in [a,b] for 0 <= a < b via the survival function, switching
// to the exponential-tail asymptote once Phi(-a) underflows.
inline double std_normal_upper(Stream& g, double a, double b) {
    const double u = g.uniform01();
    const double sa = norm_cdf(-a);
    if (sa > 0.0) {
        const double sb = b == std::numeric_limits<double>::infinity() ? 0.0 : norm_cdf(-b);
        const double s = sa - u * (sa - sb);
        if (s > 0.0) return -norm_ppf2(s, 1.0 - s);
    }
    double w = 1.0;
    if (b != std::numeric_limits<double>::infinity())
        w = -std::expm1(0.5 * (a - b) * (a + b));
    return std::sqrt(a * a - 2.0 * std::log1p(-u * w));
}

} // namespace detail

// Inverse-CDF draw from N(mu, sigma^2) truncated to [lo, hi]. No rejection
// loop, so one uniform is consumed per draw regardless of the bounds.
inline double truncated_normal(Stream& g, double mu, double sigma,
                               double lo, double hi) {
    if (!(sigma > 0.0)) throw numeric_error("truncated normal needs sigma > 0");
    if (!(lo < hi)) throw numeric_error("truncated normal needs lo < hi");
    const double inf = std::numeric_limits<double>::infinity();
    const double a = lo == -inf ? -inf : (lo - mu) / sigma;
    const double b = hi == inf ? inf : (hi - mu) / sigma;
    double z;
    if (a >= 0.0) {
        z = detail::std_normal_upper(g, a, b);
    } else if (b <= 0.0) {
        z = -detail::std_normal_upper(g, -b, a == -inf ? inf : -a);
    } else {
        const double fa = a == -inf ? 0.0 : norm_cdf(a);
        const double fb = b == inf ? 1.0 : norm_cdf(b);
        const double sa = a == -inf ? 1.0 : norm_cdf(-a);
        const double sb = b == inf ? 0.0 : norm_cdf(-b);
        const double u = g.uniform01();
        const double p = fa * (1.0 - u) + u * fb;
        const double q = sa * (1.0 - u) + u * sb;
        z = norm_ppf2(p, q);
    }
    double x = mu + sigma * z;
    if (x < lo) x = lo;
    if (x > hi) x = hi;
    if (!std::isfinite(x)) throw numeric_error("truncated normal produced non-finite value");
    return x;
}

} // namespace disagvar::rng

#pragma once

// Independent oracles used by unit and acceptance tests. Everything here is
// built from first principles (path simulation, polynomial expansion,
// quadrature) so it cannot share a bug with the library implementations.

#include <cmath>
#include <cstdint>
#include <vector>

#include "disagvar/core/rng.hpp"

namespace oracles {

struct McVariance {
    double var = 0.0;
    double se = 0.0; // standard error of the variance estimate
};

// Simulates full shock paths, forms the realized k-step growth and the
// aggregate (noise-free) forecast literally, and returns the empirical
// variance of realized minus forecast plus its Monte Carlo standard error.
inline McVariance mc_fev(const std::vector<double>& psi, double sigma_eps2,
                         double sigma_v2, int k, int paths,
                         disagvar::rng::Stream& g) {
    const int n = static_cast<int>(psi.size()) - 1;
    const double sd = std::sqrt(sigma_eps2);
    const double gamma = sigma_eps2 / (sigma_eps2 + sigma_v2);
    double s1 = 0.0, s2 = 0.0;
    std::vector<double> eps(static_cast<size_t>(n) + 1);
    for (int p = 0; p < paths; ++p) {
        for (auto& e : eps) e = sd * g.normal();
        double realized = 0.0;
        for (int j = 0; j <= n; ++j) realized += psi[(size_t)j] * eps[(size_t)j];
        double forecast = psi[(size_t)k] * gamma * eps[(size_t)k];
        for (int j = k + 1; j <= n; ++j) forecast += psi[(size_t)j] * eps[(size_t)j];
        const double err = realized - forecast;
        s1 += err;
        s2 += err * err;
    }
    const double m = static_cast<double>(paths);
    McVariance out;
    out.var = (s2 - s1 * s1 / m) / (m - 1.0);
    out.se = out.var * std::sqrt(2.0 / (m - 1.0));
    return out;
}

// Grid version sharing one set of simulated paths across all variance cells
// (the error depends on the cell only through the scale sd_eps and the
// filter weight, so two per-path statistics suffice). Shared paths make the
// per-cell z-scores co-move, and the whole grid costs one simulation.
struct GridMc {
    std::vector<double> grid_eps2, grid_v2;
    std::vector<McVariance> cells; // eps-major
};

inline GridMc mc_fev_grid(const std::vector<double>& psi, int k,
                          const std::vector<double>& grid_eps2,
                          const std::vector<double>& grid_v2, int paths,
                          disagvar::rng::Stream& g) {
    double saa = 0.0, sab = 0.0, sbb = 0.0, sa = 0.0, sb = 0.0;
    for (int p = 0; p < paths; ++p) {
        double a = 0.0;
        for (int j = 0; j < k; ++j) a += psi[(size_t)j] * g.normal();
        const double b = psi[(size_t)k] * g.normal();
        sa += a;
        sb += b;
        saa += a * a;
        sab += a * b;
        sbb += b * b;
    }
    const double m = static_cast<double>(paths);
    GridMc out;
    out.grid_eps2 = grid_eps2;
    out.grid_v2 = grid_v2;
    for (double e2 : grid_eps2)
        for (double v2 : grid_v2) {
            const double r = v2 / (e2 + v2); // 1 - gamma
            const double s1 = sa + r * sb;
            const double s2 = saa + 2.0 * r * sab + r * r * sbb;
            McVariance c;
            c.var = e2 * (s2 - s1 * s1 / m) / (m - 1.0);
            c.se = c.var * std::sqrt(2.0 / (m - 1.0));
            out.cells.push_back(c);
        }
    return out;
}

// Large-agent limit of the synthetic tail index: conditional on the common
// forecast component m, the population split is Phi(+-m / (w sd_v)), so the
// index tends to 1 - |2 Phi(m/(w sd_v)) - 1|. Integrates over the normal
// density of m by trapezoid quadrature.
inline double panel_limit(const std::vector<double>& psi, double sigma_eps2,
                          double sigma_v2, int k) {
    const int n = static_cast<int>(psi.size()) - 1;
    if (sigma_v2 <= 0.0) return 0.0;
    const double gamma = sigma_eps2 / (sigma_eps2 + sigma_v2);
    const double w = psi[(size_t)k] * gamma;
    double var_m = w * w * sigma_eps2;
    for (int j = k + 1; j <= n; ++j)
        var_m += psi[(size_t)j] * psi[(size_t)j] * sigma_eps2;
    const double sd_m = std::sqrt(var_m);
    const double scale = w * std::sqrt(sigma_v2);
    const double h = 1e-3;
    double acc = 0.0;
    for (double z = -10.0; z <= 10.0; z += h) {
        const double phi = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
        const double arg = sd_m * z / scale;
        const double val = 1.0 - std::fabs(2.0 * disagvar::rng::norm_cdf(arg) - 1.0);
        acc += phi * val * h;
    }
    return acc;
}

// Closed-form forecast-error variance evaluated in quad precision. Central
// finite differences at step 1e-6 need this: in double arithmetic the
// smallest grid derivatives (~1e-13) drown in the rounding of the large
// constant head term, while quad keeps the difference quotient exact to
// ~1e-28. Only +,-,*,/ are used, so no quadmath library is required.
inline __float128 fev_quad(const std::vector<double>& psi, __float128 e2,
                           __float128 v2, int k) {
    __float128 head = 0;
    for (int j = 0; j < k; ++j)
        head += static_cast<__float128>(psi[(size_t)j]) * psi[(size_t)j];
    const __float128 r = v2 / (e2 + v2);
    const __float128 tail = static_cast<__float128>(psi[(size_t)k]) * psi[(size_t)k] * r * r;
    return (head + tail) * e2;
}

inline double fd_fev_eps2(const std::vector<double>& psi, double e2, double v2,
                          int k, double step = 1e-6) {
    return static_cast<double>(
        (fev_quad(psi, static_cast<__float128>(e2) + step, v2, k) -
         fev_quad(psi, static_cast<__float128>(e2) - step, v2, k)) /
        (2 * static_cast<__float128>(step)));
}

inline double fd_fev_v2(const std::vector<double>& psi, double e2, double v2,
                        int k, double step = 1e-6) {
    return static_cast<double>(
        (fev_quad(psi, e2, static_cast<__float128>(v2) + step, k) -
         fev_quad(psi, e2, static_cast<__float128>(v2) - step, k)) /
        (2 * static_cast<__float128>(step)));
}

// Random MA(k) built by expanding factors with roots drawn strictly inside
// the unit disc (real roots and conjugate pairs), then applying a random
// nonzero leading scale. Coefficients returned in descending powers, i.e.
// psi_0 z^k + ... + psi_k.
inline std::vector<double> random_invertible_ma(int k, disagvar::rng::Stream& g) {
    std::vector<double> c{1.0};
    int deg = 0;
    while (deg < k) {
        if (k - deg >= 2 && g.uniform01() < 0.5) {
            const double r = 0.05 + 0.90 * g.uniform01();
            const double theta = M_PI * g.uniform01();
            const double b = -2.0 * r * std::cos(theta);
            const double a = r * r;
            std::vector<double> nc(c.size() + 2, 0.0);
            for (size_t i = 0; i < c.size(); ++i) {
                nc[i] += c[i];
                nc[i + 1] += b * c[i];
                nc[i + 2] += a * c[i];
            }
            c = std::move(nc);
            deg += 2;
        } else {
            const double u = -0.95 + 1.90 * g.uniform01();
            std::vector<double> nc(c.size() + 1, 0.0);
            for (size_t i = 0; i < c.size(); ++i) {
                nc[i] += c[i];
                nc[i + 1] += -u * c[i];
            }
            c = std::move(nc);
            deg += 1;
        }
    }
    double scale = 0.25 + 1.75 * g.uniform01();
    if (g.uniform01() < 0.5) scale = -scale;
    for (auto& x : c) x *= scale;
    return c;
}

} // namespace oracles

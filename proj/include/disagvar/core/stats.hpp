#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "disagvar/core/errors.hpp"

namespace disagvar::stats {

inline double mean(const std::vector<double>& x) {
    if (x.empty()) throw numeric_error("mean of empty vector");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Sample variance with the n-1 denominator.
inline double variance(const std::vector<double>& x) {
    const size_t n = x.size();
    if (n < 2) throw numeric_error("variance needs at least 2 observations");
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(n - 1);
}

inline double stddev(const std::vector<double>& x) { return std::sqrt(variance(x)); }

// Linear-interpolation empirical quantile (R type 7) on a sorted copy.
inline double quantile(std::vector<double> x, double p) {
    if (x.empty()) throw numeric_error("quantile of empty vector");
    if (!(p >= 0.0 && p <= 1.0)) throw numeric_error("quantile level outside [0,1]");
    std::sort(x.begin(), x.end());
    const double h = p * static_cast<double>(x.size() - 1);
    const size_t lo = static_cast<size_t>(h);
    if (lo + 1 >= x.size()) return x.back();
    const double frac = h - static_cast<double>(lo);
    return x[lo] + frac * (x[lo + 1] - x[lo]);
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw numeric_error("correlation needs two equal-length vectors, n >= 2");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw numeric_error("correlation undefined for constant vector");
    return sxy / std::sqrt(sxx * syy);
}

inline std::vector<double> ranks(const std::vector<double>& x) {
    const size_t n = x.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), size_t{0});
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return x[a] < x[b]; });
    std::vector<double> r(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
        const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson(ranks(x), ranks(y));
}

// Effective sample size via Geyer's initial positive sequence estimator.
// Clamped to the chain length, so reported ESS never exceeds the number
// of retained draws.
inline double ess(const std::vector<double>& chain) {
    const size_t n = chain.size();
    if (n < 4) return static_cast<double>(n);
    const double m = mean(chain);
    std::vector<double> c(n);
    for (size_t i = 0; i < n; ++i) c[i] = chain[i] - m;
    auto gamma_hat = [&](size_t lag) {
        double s = 0.0;
        for (size_t t = lag; t < n; ++t) s += c[t] * c[t - lag];
        return s / static_cast<double>(n);
    };
    const double g0 = gamma_hat(0);
    if (g0 <= 0.0) return static_cast<double>(n);
    // Cap the scan: past a few thousand lags the estimate is already tiny
    // and the quadratic cost would dominate for sticky chains.
    const size_t max_lag = std::min(n - 1, size_t{4096});
    double iat = -1.0;
    for (size_t lag = 0; lag + 1 < max_lag; lag += 2) {
        const double pair = gamma_hat(lag) + gamma_hat(lag + 1);
        if (pair <= 0.0) break;
        iat += 2.0 * pair / g0;
    }
    if (iat < 1.0) iat = 1.0;
    return std::min(static_cast<double>(n), static_cast<double>(n) / iat);
}

} // namespace disagvar::stats

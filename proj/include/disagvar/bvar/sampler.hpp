#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/SVD>

#include "disagvar/bvar/config.hpp"
#include "disagvar/bvar/design.hpp"
#include "disagvar/core/errors.hpp"
#include "disagvar/core/rng.hpp"
#include "disagvar/core/stats.hpp"

namespace disagvar::bvar {

// Full parameter state of the factor-augmented VAR
//   y_t = Phi x_t + Lambda f_t + v_t,  v_t ~ N(0, diag(sigma2)),
//   f_t ~ N(0, I_r),
// with a horseshoe prior on each row of Phi
//   phi_ij ~ N(0, sigma2_i * tau2_i * psi2_ij),
//   psi_ij, tau_i ~ half-Cauchy(0,1) via inverse-gamma auxiliaries nu, xi,
// and independent normal priors on Lambda, truncated where sign-restricted.
struct GibbsState {
    Eigen::MatrixXd phi;     // n x k
    Eigen::MatrixXd lambda;  // n x r
    Eigen::VectorXd sigma2;  // n
    Eigen::MatrixXd factors; // T x r
    Eigen::MatrixXd psi2;    // n x k
    Eigen::VectorXd tau2;    // n
    Eigen::MatrixXd nu;      // n x k
    Eigen::VectorXd xi;      // n
};

namespace detail {

inline void check_finite(const GibbsState& s, long iteration) {
    const bool ok = s.phi.allFinite() && s.lambda.allFinite() &&
                    s.sigma2.allFinite() && s.factors.allFinite() &&
                    s.psi2.allFinite() && s.tau2.allFinite() && s.nu.allFinite() &&
                    s.xi.allFinite() && (s.sigma2.array() > 0.0).all() &&
                    (s.psi2.array() > 0.0).all() && (s.tau2.array() > 0.0).all();
    if (!ok)
        throw numeric_error("sampler diverged at iteration " +
                            std::to_string(iteration) +
                            ": non-finite or non-positive state");
}

inline void check_pattern(const Eigen::MatrixXd& lambda, const SignPattern& p,
                          long iteration) {
    for (int i = 0; i < p.n_vars; ++i)
        for (int j = 0; j < p.n_shocks; ++j) {
            const double v = lambda(i, j);
            const Sign s = p.at(i, j);
            const bool ok = (s == Sign::zero && v == 0.0) ||
                            (s == Sign::positive && v > 0.0) ||
                            (s == Sign::negative && v < 0.0) ||
                            s == Sign::unrestricted;
            if (!ok)
                throw numeric_error("sign restriction violated at iteration " +
                                    std::to_string(iteration) + " for loading (" +
                                    std::to_string(i + 1) + "," +
                                    std::to_string(j + 1) + ")");
        }
}

} // namespace detail

// Ridge regression for Phi, sign-projected principal components of the
// residuals for Lambda, residual variances for sigma2, conditional means
// for the factors, unit shrinkage scales.
inline GibbsState initial_state(const DesignData& d, const VarConfig& c) {
    const long t = d.t_obs();
    const int n = d.n_vars();
    const int k = d.n_regressors();
    const int r = c.n_factors;

    GibbsState s;
    const Eigen::MatrixXd xtx = d.x.transpose() * d.x;
    const double ridge = 1e-4 * xtx.trace() / k + 1e-10;
    Eigen::MatrixXd a = xtx;
    a.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        throw numeric_error("initial ridge regression failed");
    s.phi = llt.solve(d.x.transpose() * d.y).transpose();

    const Eigen::MatrixXd resid = d.y - d.x * s.phi.transpose();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(resid,
                                       Eigen::ComputeThinU | Eigen::ComputeThinV);
    s.lambda = svd.matrixV().leftCols(r) *
               (svd.singularValues().head(r) / std::sqrt(double(t))).asDiagonal();
    for (int j = 0; j < r; ++j) {
        double agree = 0.0;
        for (int i = 0; i < n; ++i) {
            if (c.pattern.at(i, j) == Sign::positive) agree += s.lambda(i, j);
            if (c.pattern.at(i, j) == Sign::negative) agree -= s.lambda(i, j);
        }
        if (agree < 0.0) s.lambda.col(j) = -s.lambda.col(j);
        for (int i = 0; i < n; ++i) {
            switch (c.pattern.at(i, j)) {
                case Sign::zero: s.lambda(i, j) = 0.0; break;
                case Sign::positive:
                    s.lambda(i, j) = std::max(std::abs(s.lambda(i, j)), 0.1);
                    break;
                case Sign::negative:
                    s.lambda(i, j) = -std::max(std::abs(s.lambda(i, j)), 0.1);
                    break;
                default: break;
            }
        }
    }

    s.sigma2.resize(n);
    for (int i = 0; i < n; ++i)
        s.sigma2(i) = std::max(resid.col(i).squaredNorm() / double(t), 1e-8);

    const Eigen::MatrixXd w =
        s.lambda.transpose() * s.sigma2.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd af = Eigen::MatrixXd::Identity(r, r) + w * s.lambda;
    s.factors = af.llt().solve(w * resid.transpose()).transpose();

    s.psi2 = Eigen::MatrixXd::Ones(n, k);
    s.tau2 = Eigen::VectorXd::Ones(n);
    s.nu = Eigen::MatrixXd::Ones(n, k);
    s.xi = Eigen::VectorXd::Ones(n);
    return s;
}

// One full scan of the conditionals, in fixed order: Phi rows, factors,
// Lambda entries, idiosyncratic variances, shrinkage scales. xtx caches X'X.
inline void gibbs_sweep(GibbsState& s, const DesignData& d, const VarConfig& c,
                        const Eigen::MatrixXd& xtx, rng::Stream& g,
                        long iteration) {
    const long t = d.t_obs();
    const int n = d.n_vars();
    const int k = d.n_regressors();
    const int r = c.n_factors;
    const double inf = std::numeric_limits<double>::infinity();

    // Phi | rest: row i has precision (X'X + D_i^{-1}) / sigma2_i with
    // D_i = diag(tau2_i * psi2_ij), around the GLS mean.
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXd a = xtx;
        for (int j = 0; j < k; ++j) a(j, j) += 1.0 / (s.tau2(i) * s.psi2(i, j));
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        if (llt.info() != Eigen::Success)
            throw numeric_error("coefficient draw failed at iteration " +
                                std::to_string(iteration) + " for variable " +
                                std::to_string(i + 1));
        const Eigen::VectorXd yhat =
            d.y.col(i) - s.factors * s.lambda.row(i).transpose();
        const Eigen::VectorXd mean = llt.solve(d.x.transpose() * yhat);
        Eigen::VectorXd z(k);
        for (int j = 0; j < k; ++j) z(j) = g.normal();
        s.phi.row(i) =
            (mean + std::sqrt(s.sigma2(i)) *
                        llt.matrixU().solve(z)).transpose();
    }

    // factors | rest: f_t ~ N(A^{-1} W e_t, A^{-1}), A = I + Lambda' S^-1 Lambda.
    {
        const Eigen::MatrixXd resid = d.y - d.x * s.phi.transpose();
        const Eigen::MatrixXd w =
            s.lambda.transpose() * s.sigma2.cwiseInverse().asDiagonal();
        const Eigen::MatrixXd af = Eigen::MatrixXd::Identity(r, r) + w * s.lambda;
        Eigen::LLT<Eigen::MatrixXd> llt(af);
        if (llt.info() != Eigen::Success)
            throw numeric_error("factor draw failed at iteration " +
                                std::to_string(iteration));
        Eigen::MatrixXd z(t, r);
        for (long tt = 0; tt < t; ++tt)
            for (int j = 0; j < r; ++j) z(tt, j) = g.normal();
        s.factors = llt.solve(w * resid.transpose()).transpose() +
                    llt.matrixU().solve(z.transpose()).transpose();
    }

    // Lambda | rest: entrywise normal with precision f_j'f_j / sigma2_i + 1/h,
    // truncated to the restricted half-line, pinned at zero restrictions.
    {
        Eigen::VectorXd ff(r);
        for (int j = 0; j < r; ++j) ff(j) = s.factors.col(j).squaredNorm();
        for (int i = 0; i < n; ++i) {
            Eigen::VectorXd u = d.y.col(i) - d.x * s.phi.row(i).transpose() -
                                s.factors * s.lambda.row(i).transpose();
            for (int j = 0; j < r; ++j) {
                const Sign restriction = c.pattern.at(i, j);
                u += s.factors.col(j) * s.lambda(i, j);
                if (restriction == Sign::zero) {
                    s.lambda(i, j) = 0.0;
                    continue;
                }
                const double var =
                    1.0 / (ff(j) / s.sigma2(i) + 1.0 / c.prior.h(i, j));
                const double mean = var * s.factors.col(j).dot(u) / s.sigma2(i);
                const double sd = std::sqrt(var);
                double draw;
                if (restriction == Sign::positive)
                    draw = std::max(rng::truncated_normal(g, mean, sd, 0.0, inf),
                                    1e-300);
                else if (restriction == Sign::negative)
                    draw = std::min(rng::truncated_normal(g, mean, sd, -inf, 0.0),
                                    -1e-300);
                else
                    draw = g.normal(mean, sd);
                s.lambda(i, j) = draw;
                u -= s.factors.col(j) * draw;
            }
            // sigma2 | rest folds in the scale-dependent Phi prior, so the
            // shape picks up k/2 on top of the usual T/2.
            double q = 0.0;
            for (int j = 0; j < k; ++j)
                q += s.phi(i, j) * s.phi(i, j) / (s.tau2(i) * s.psi2(i, j));
            const double shape = c.prior.rho(i) + 0.5 * (double(t) + k);
            const double rate = c.prior.kappa(i) + 0.5 * (u.squaredNorm() + q);
            s.sigma2(i) = g.inv_gamma(shape, rate);
        }
    }

    // shrinkage scales | rest: standard inverse-gamma ladder for the
    // half-Cauchy local/global scales and their auxiliaries.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) {
            const double phi2 = s.phi(i, j) * s.phi(i, j);
            s.psi2(i, j) = g.inv_gamma(
                1.0, 1.0 / s.nu(i, j) + phi2 / (2.0 * s.sigma2(i) * s.tau2(i)));
            s.nu(i, j) = g.inv_gamma(1.0, 1.0 + 1.0 / s.psi2(i, j));
        }
        double q = 0.0;
        for (int j = 0; j < k; ++j)
            q += s.phi(i, j) * s.phi(i, j) / s.psi2(i, j);
        s.tau2(i) =
            g.inv_gamma(0.5 * (k + 1), 1.0 / s.xi(i) + q / (2.0 * s.sigma2(i)));
        s.xi(i) = g.inv_gamma(1.0, 1.0 + 1.0 / s.tau2(i));
    }

    detail::check_finite(s, iteration);
    detail::check_pattern(s.lambda, c.pattern, iteration);
}

struct PosteriorDraws {
    int n_vars = 0;
    int n_lags = 0;
    int n_factors = 0;
    long t_obs = 0;
    std::vector<Eigen::MatrixXd> phi;       // n x k
    std::vector<Eigen::MatrixXd> lambda;    // n x r
    std::vector<Eigen::VectorXd> sigma2;    // n
    std::vector<Eigen::MatrixXd> factors;   // T x r
    std::vector<Eigen::MatrixXd> local_scale;  // n x k, sqrt of psi2
    std::vector<Eigen::VectorXd> global_scale; // n, sqrt of tau2

    size_t size() const { return phi.size(); }
};

struct GroupEss {
    double min_ess = 0.0;
    double median_ess = 0.0;
    long chains = 0;
};

struct McmcDiagnostics {
    std::vector<std::pair<std::string, GroupEss>> ess;
    long retained = 0;
    double wall_seconds = 0.0;
};

struct McmcResult {
    PosteriorDraws draws;
    McmcDiagnostics diagnostics;
};

namespace detail {

template <typename Extract>
GroupEss group_ess(size_t n_chains, size_t n_draws, Extract&& value) {
    std::vector<double> chain(n_draws), all;
    all.reserve(n_chains);
    for (size_t c = 0; c < n_chains; ++c) {
        for (size_t d = 0; d < n_draws; ++d) chain[d] = value(c, d);
        all.push_back(stats::ess(chain));
    }
    GroupEss out;
    out.chains = static_cast<long>(n_chains);
    if (all.empty()) return out;
    out.min_ess = *std::min_element(all.begin(), all.end());
    out.median_ess = stats::quantile(all, 0.5);
    return out;
}

} // namespace detail

inline McmcDiagnostics compute_diagnostics(const PosteriorDraws& p,
                                           const SignPattern& pattern) {
    McmcDiagnostics diag;
    diag.retained = static_cast<long>(p.size());
    if (p.size() < 2) return diag;
    const int n = p.n_vars;
    const int k = n * p.n_lags + 1;
    const size_t m = p.size();

    diag.ess.emplace_back("phi", detail::group_ess(size_t(n) * k, m,
        [&](size_t c, size_t d) { return p.phi[d](c / k, c % k); }));

    std::vector<std::pair<int, int>> free_cells;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p.n_factors; ++j)
            if (pattern.at(i, j) != Sign::zero) free_cells.emplace_back(i, j);
    diag.ess.emplace_back("lambda", detail::group_ess(free_cells.size(), m,
        [&](size_t c, size_t d) {
            return p.lambda[d](free_cells[c].first, free_cells[c].second);
        }));

    diag.ess.emplace_back("sigma2", detail::group_ess(size_t(n), m,
        [&](size_t c, size_t d) { return p.sigma2[d](long(c)); }));

    diag.ess.emplace_back("global_scale", detail::group_ess(size_t(n), m,
        [&](size_t c, size_t d) { return p.global_scale[d](long(c)); }));
    return diag;
}

// Runs the full chain: init, burn-in, thinned retention, diagnostics.
// Deterministic given (design, config): the stream is derived from the seed
// and every conditional consumes draws in a fixed order.
inline McmcResult run_mcmc(const DesignData& d, const VarConfig& c) {
    validate(c);
    if (d.n_vars() != c.n_vars)
        throw config_error("design has " + std::to_string(d.n_vars()) +
                           " variables but config declares " +
                           std::to_string(c.n_vars));
    if (d.n_lags != c.n_lags)
        throw config_error("design was built with " + std::to_string(d.n_lags) +
                           " lags but config declares " +
                           std::to_string(c.n_lags));

    const auto start = std::chrono::steady_clock::now();
    rng::Stream g = rng::Stream::derive(c.mcmc.seed, {});
    GibbsState s = initial_state(d, c);
    const Eigen::MatrixXd xtx = d.x.transpose() * d.x;

    McmcResult out;
    PosteriorDraws& p = out.draws;
    p.n_vars = c.n_vars;
    p.n_lags = c.n_lags;
    p.n_factors = c.n_factors;
    p.t_obs = d.t_obs();
    const long keep = c.mcmc.retained();
    p.phi.reserve(keep);
    p.lambda.reserve(keep);
    p.sigma2.reserve(keep);
    p.factors.reserve(keep);
    p.local_scale.reserve(keep);
    p.global_scale.reserve(keep);

    for (long it = 1; it <= c.mcmc.draws; ++it) {
        gibbs_sweep(s, d, c, xtx, g, it);
        if (it > c.mcmc.burn_in && (it - c.mcmc.burn_in) % c.mcmc.thin == 0) {
            p.phi.push_back(s.phi);
            p.lambda.push_back(s.lambda);
            p.sigma2.push_back(s.sigma2);
            p.factors.push_back(s.factors);
            p.local_scale.push_back(s.psi2.cwiseSqrt());
            p.global_scale.push_back(s.tau2.cwiseSqrt());
        }
    }

    out.diagnostics = compute_diagnostics(p, c.pattern);
    out.diagnostics.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return out;
}

namespace detail {

inline double log_inv_gamma(double x, double shape, double rate) {
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
    return shape * std::log(rate) - std::lgamma(shape) -
           (shape + 1.0) * std::log(x) - rate / x;
}

inline double log_normal(double x, double mean, double var) {
    static const double ln2pi = std::log(2.0 * 3.14159265358979323846);
    return -0.5 * (ln2pi + std::log(var) + (x - mean) * (x - mean) / var);
}

// Half-Cauchy(0,1) density of the scale, expressed in the squared scale x.
inline double log_half_cauchy_sq(double x) {
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
    static const double lnpi = std::log(3.14159265358979323846);
    return -lnpi - 0.5 * std::log(x) - std::log1p(x);
}

} // namespace detail

// Log of the joint density of (data, parameters) at one state, with the
// shrinkage auxiliaries integrated out (half-Cauchy form); -inf when a
// restriction is violated. Used to certify retained draws are in-support.
inline double log_joint_density(const DesignData& d, const VarConfig& c,
                                const GibbsState& s) {
    const long t = d.t_obs();
    const int n = d.n_vars();
    const int k = d.n_regressors();
    const int r = c.n_factors;
    double lp = 0.0;

    const Eigen::MatrixXd mean =
        d.x * s.phi.transpose() + s.factors * s.lambda.transpose();
    for (int i = 0; i < n; ++i)
        for (long tt = 0; tt < t; ++tt)
            lp += detail::log_normal(d.y(tt, i), mean(tt, i), s.sigma2(i));
    for (long tt = 0; tt < t; ++tt)
        for (int j = 0; j < r; ++j)
            lp += detail::log_normal(s.factors(tt, j), 0.0, 1.0);

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j)
            lp += detail::log_normal(s.phi(i, j), 0.0,
                                     s.sigma2(i) * s.tau2(i) * s.psi2(i, j));
        for (int j = 0; j < r; ++j) {
            const Sign restriction = c.pattern.at(i, j);
            const double v = s.lambda(i, j);
            const double h = c.prior.h(i, j);
            if (restriction == Sign::zero) {
                if (v != 0.0) return -std::numeric_limits<double>::infinity();
            } else if (restriction == Sign::positive) {
                if (!(v > 0.0)) return -std::numeric_limits<double>::infinity();
                lp += std::log(2.0) + detail::log_normal(v, 0.0, h);
            } else if (restriction == Sign::negative) {
                if (!(v < 0.0)) return -std::numeric_limits<double>::infinity();
                lp += std::log(2.0) + detail::log_normal(v, 0.0, h);
            } else {
                lp += detail::log_normal(v, 0.0, h);
            }
        }
        lp += detail::log_inv_gamma(s.sigma2(i), c.prior.rho(i), c.prior.kappa(i));
        for (int j = 0; j < k; ++j)
            lp += detail::log_half_cauchy_sq(s.psi2(i, j));
        lp += detail::log_half_cauchy_sq(s.tau2(i));
    }
    return lp;
}

// Reassembles the state recorded at one retained draw; the integrated-out
// auxiliaries are filled with ones and do not enter log_joint_density.
inline GibbsState state_from_draw(const PosteriorDraws& p, size_t d) {
    GibbsState s;
    s.phi = p.phi[d];
    s.lambda = p.lambda[d];
    s.sigma2 = p.sigma2[d];
    s.factors = p.factors[d];
    s.psi2 = p.local_scale[d].array().square();
    s.tau2 = p.global_scale[d].array().square();
    s.nu = Eigen::MatrixXd::Ones(s.phi.rows(), s.phi.cols());
    s.xi = Eigen::VectorXd::Ones(s.sigma2.size());
    return s;
}

} // namespace disagvar::bvar

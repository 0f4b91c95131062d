#pragma once

// Structural summaries of posterior draws: per-draw moving-average response
// paths to the common shocks, and forecast-error variance decompositions with
// an explicit residual share for the idiosyncratic noise. Draws whose lag
// polynomial is explosive are flagged and excluded from band summaries, with
// the exclusion count surfaced.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "disagvar/bvar/sampler.hpp"
#include "disagvar/core/errors.hpp"

namespace disagvar::structural {

// Companion form of the lag polynomial; column 0 of phi (the constant) is
// excluded. Rows of phi are ordered [const, lag-1 block, ..., lag-p block].
inline Eigen::MatrixXd companion_matrix(const Eigen::MatrixXd& phi,
                                        int n_lags) {
    const int n = static_cast<int>(phi.rows());
    const int p = n_lags;
    if (phi.cols() != 1 + static_cast<long>(n) * p)
        throw data_error("coefficient matrix has " +
                         std::to_string(phi.cols()) +
                         " columns; expected 1 + n_vars * n_lags = " +
                         std::to_string(1 + static_cast<long>(n) * p));
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n * p, n * p);
    c.topRows(n) = phi.rightCols(static_cast<long>(n) * p);
    if (p > 1)
        c.bottomLeftCorner(n * (p - 1), n * (p - 1)).setIdentity();
    return c;
}

inline double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() == 0) return 0.0;
    return m.eigenvalues().cwiseAbs().maxCoeff();
}

namespace detail {

// Moving-average coefficient matrices of the lag polynomial, by the standard
// recursion psi_0 = I, psi_h = sum_{l<=min(h,p)} A_l psi_{h-l}.
inline std::vector<Eigen::MatrixXd> ma_coefficients(const Eigen::MatrixXd& phi,
                                                    int n_lags, int horizon) {
    const int n = static_cast<int>(phi.rows());
    const int p = n_lags;
    std::vector<Eigen::MatrixXd> lags(p);
    for (int l = 0; l < p; ++l)
        lags[l] = phi.block(0, 1 + static_cast<long>(n) * l, n, n);
    std::vector<Eigen::MatrixXd> psi(static_cast<size_t>(horizon) + 1);
    psi[0] = Eigen::MatrixXd::Identity(n, n);
    for (int h = 1; h <= horizon; ++h) {
        psi[h] = Eigen::MatrixXd::Zero(n, n);
        for (int l = 1; l <= std::min(h, p); ++l)
            psi[h] += lags[l - 1] * psi[h - l];
    }
    return psi;
}

} // namespace detail

// Response paths of every variable to every common shock, per retained draw.
// Responses are in transformed-variable units per one-standard-deviation
// shock; horizon 0 is the impact matrix itself.
struct ImpulseResponseSet {
    int n_vars = 0;
    int n_shocks = 0;
    int horizon = 0;
    size_t n_draws = 0;
    std::vector<double> values;          // draw x var x shock x horizon
    std::vector<unsigned char> explosive; // per draw

    double at(size_t draw, int var, int shock, int h) const {
        return values[((draw * n_vars + var) * n_shocks + shock) *
                          (horizon + 1) +
                      h];
    }
    double& at(size_t draw, int var, int shock, int h) {
        return values[((draw * n_vars + var) * n_shocks + shock) *
                          (horizon + 1) +
                      h];
    }
    size_t excluded_count() const {
        size_t c = 0;
        for (unsigned char e : explosive) c += e != 0;
        return c;
    }
};

// Forecast-error variance shares per draw, variable, shock, and horizon. The
// last shock slot (index n_shocks - 1) is the residual share of the
// idiosyncratic noise; shares sum to one at every (draw, variable, horizon).
struct FevdSet {
    int n_vars = 0;
    int n_shocks = 0; // common shocks + 1 residual slot
    int horizon = 0;
    size_t n_draws = 0;
    std::vector<double> values;
    std::vector<unsigned char> explosive;

    double at(size_t draw, int var, int shock, int h) const {
        return values[((draw * n_vars + var) * n_shocks + shock) *
                          (horizon + 1) +
                      h];
    }
    double& at(size_t draw, int var, int shock, int h) {
        return values[((draw * n_vars + var) * n_shocks + shock) *
                          (horizon + 1) +
                      h];
    }
    size_t excluded_count() const {
        size_t c = 0;
        for (unsigned char e : explosive) c += e != 0;
        return c;
    }
};

inline ImpulseResponseSet impulse_responses(const bvar::PosteriorDraws& draws,
                                            int horizon) {
    if (horizon < 0)
        throw config_error("impulse-response horizon must be nonnegative");
    if (draws.size() == 0)
        throw data_error("no retained draws to compute responses from");
    const int n = draws.n_vars;
    const int r = draws.n_factors;
    ImpulseResponseSet set;
    set.n_vars = n;
    set.n_shocks = r;
    set.horizon = horizon;
    set.n_draws = draws.size();
    set.values.resize(set.n_draws * n * r * (horizon + 1));
    set.explosive.resize(set.n_draws, 0);
    for (size_t d = 0; d < draws.size(); ++d) {
        const Eigen::MatrixXd& phi = draws.phi[d];
        set.explosive[d] =
            spectral_radius(companion_matrix(phi, draws.n_lags)) >= 1.0;
        const auto psi = detail::ma_coefficients(phi, draws.n_lags, horizon);
        for (int h = 0; h <= horizon; ++h) {
            const Eigen::MatrixXd resp = psi[h] * draws.lambda[d];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < r; ++j) set.at(d, i, j, h) = resp(i, j);
        }
    }
    return set;
}

// Running sum of each response path over horizons, for series modeled in
// first differences (level responses from difference-space responses).
inline ImpulseResponseSet cumulative(const ImpulseResponseSet& set) {
    ImpulseResponseSet out = set;
    for (size_t d = 0; d < set.n_draws; ++d)
        for (int i = 0; i < set.n_vars; ++i)
            for (int j = 0; j < set.n_shocks; ++j)
                for (int h = 1; h <= set.horizon; ++h)
                    out.at(d, i, j, h) += out.at(d, i, j, h - 1);
    return out;
}

inline FevdSet fevd(const bvar::PosteriorDraws& draws, int horizon) {
    if (horizon < 0)
        throw config_error("variance-decomposition horizon must be nonnegative");
    if (draws.size() == 0)
        throw data_error("no retained draws to decompose");
    const int n = draws.n_vars;
    const int r = draws.n_factors;
    FevdSet set;
    set.n_vars = n;
    set.n_shocks = r + 1;
    set.horizon = horizon;
    set.n_draws = draws.size();
    set.values.resize(set.n_draws * n * (r + 1) * (horizon + 1));
    set.explosive.resize(set.n_draws, 0);
    for (size_t d = 0; d < draws.size(); ++d) {
        const Eigen::MatrixXd& phi = draws.phi[d];
        set.explosive[d] =
            spectral_radius(companion_matrix(phi, draws.n_lags)) >= 1.0;
        const auto psi = detail::ma_coefficients(phi, draws.n_lags, horizon);
        Eigen::MatrixXd common = Eigen::MatrixXd::Zero(n, r); // running sums
        Eigen::VectorXd idio = Eigen::VectorXd::Zero(n);
        for (int h = 0; h <= horizon; ++h) {
            const Eigen::MatrixXd resp = psi[h] * draws.lambda[d];
            common += resp.cwiseProduct(resp);
            idio += (psi[h].cwiseProduct(psi[h]) * draws.sigma2[d]);
            for (int i = 0; i < n; ++i) {
                const double total = common.row(i).sum() + idio(i);
                if (!(total > 0.0))
                    throw numeric_error(
                        "zero forecast-error variance for variable " +
                        std::to_string(i + 1) + " at horizon " +
                        std::to_string(h));
                for (int j = 0; j < r; ++j)
                    set.at(d, i, j, h) = common(i, j) / total;
                set.at(d, i, r, h) = idio(i) / total;
            }
        }
    }
    return set;
}

} // namespace disagvar::structural

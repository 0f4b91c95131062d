#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "disagvar/core/errors.hpp"

namespace disagvar::bvar {

// Stacked regression y_t = Phi x_t + e_t with
// x_t = (1, y_{t-1}', ..., y_{t-p}')', t = p+1..T.
struct DesignData {
    Eigen::MatrixXd y; // (T-p) x n
    Eigen::MatrixXd x; // (T-p) x (n*p + 1)
    int n_lags = 0;
    std::vector<std::string> warnings;

    long t_obs() const { return y.rows(); }
    int n_vars() const { return static_cast<int>(y.cols()); }
    int n_regressors() const { return static_cast<int>(x.cols()); }
};

inline DesignData build_design(const Eigen::MatrixXd& data, int p) {
    const long t_raw = data.rows();
    const int n = static_cast<int>(data.cols());
    if (n < 1) throw data_error("design needs at least one variable");
    if (p < 1) throw config_error("lag order must be at least 1");
    if (!data.allFinite()) throw data_error("design input contains non-finite values");
    const int k = n * p + 1;
    const long t_eff = t_raw - p;
    if (t_eff <= k)
        throw data_error("too few observations: " + std::to_string(t_eff) +
                         " effective rows for " + std::to_string(k) + " regressors");

    DesignData d;
    d.n_lags = p;
    d.y = data.bottomRows(t_eff);
    d.x.resize(t_eff, k);
    for (long t = 0; t < t_eff; ++t) {
        d.x(t, 0) = 1.0;
        for (int lag = 1; lag <= p; ++lag)
            d.x.block(t, 1 + (lag - 1) * n, 1, n) = data.row(p + t - lag);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(d.x);
    if (qr.rank() < k)
        d.warnings.push_back("design matrix is rank-deficient (rank " +
                             std::to_string(qr.rank()) + " of " + std::to_string(k) +
                             "); coefficients are not separately identified");
    return d;
}

} // namespace disagvar::bvar

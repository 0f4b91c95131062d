#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "disagvar/core/errors.hpp"

namespace disagvar::dispersion {

// Economy where log-growth follows an MA(n) in a single fundamental shock
// and each of N agents sees the current shock through idiosyncratic noise:
// signal_i = eps_t + v_i, var(eps) = sigma_eps2, var(v) = sigma_v2.
struct MaEconomy {
    std::vector<double> psi; // psi_0 .. psi_n
    double sigma_eps2 = 1.0;
    double sigma_v2 = 0.0;
    int n_agents = 1;

    int order() const { return static_cast<int>(psi.size()) - 1; }
};

inline void validate(const MaEconomy& e) {
    if (e.psi.empty()) throw numeric_error("economy needs a nonempty MA coefficient vector");
    for (double c : e.psi)
        if (!std::isfinite(c)) throw numeric_error("non-finite MA coefficient");
    if (!(e.sigma_eps2 > 0.0))
        throw numeric_error("fundamental shock variance must be positive");
    if (!(e.sigma_v2 >= 0.0))
        throw numeric_error("noise variance must be nonnegative");
    if (e.n_agents < 1) throw numeric_error("agent count must be positive");
}

// Weight agents place on their private signal when projecting the current
// shock: gamma = sigma_eps2 / (sigma_eps2 + sigma_v2), in (0, 1].
inline double projection_coefficient(double sigma_eps2, double sigma_v2) {
    if (!(sigma_eps2 > 0.0))
        throw numeric_error("projection coefficient requires positive fundamental variance");
    if (!(sigma_v2 >= 0.0))
        throw numeric_error("projection coefficient requires nonnegative noise variance");
    return sigma_eps2 / (sigma_eps2 + sigma_v2);
}

namespace detail {

inline void check_horizon(const MaEconomy& e, int k) {
    if (k < 1 || k > e.order())
        throw numeric_error("horizon k must satisfy 1 <= k <= " +
                            std::to_string(e.order()));
}

} // namespace detail

// Variance of the aggregate k-step forecast error:
//   [ sum_{j<k} psi_j^2 + psi_k^2 * R^2 ] * sigma_eps2,
// with R = sigma_v2 / (sigma_eps2 + sigma_v2) = 1 - gamma. Future shocks are
// unforecastable; the current one is filtered with weight gamma and the
// idiosyncratic noise averages out of the aggregate forecast.
inline double forecast_error_variance(const MaEconomy& e, int k) {
    validate(e);
    detail::check_horizon(e, k);
    double head = 0.0;
    for (int j = 0; j < k; ++j) head += e.psi[j] * e.psi[j];
    const double r = e.sigma_v2 / (e.sigma_eps2 + e.sigma_v2);
    return (head + e.psi[k] * e.psi[k] * r * r) * e.sigma_eps2;
}

// Exact partial of the closed form in sigma_eps2. Positive for any
// invertible coefficient vector: the possible negative part is bounded by
// psi_k^2 <= psi_0^2 <= sum_{j<k} psi_j^2 since R^2 and the ratio below are
// both at most 1 in magnitude.
inline double d_fev_d_sigma_eps2(const MaEconomy& e, int k) {
    validate(e);
    detail::check_horizon(e, k);
    double head = 0.0;
    for (int j = 0; j < k; ++j) head += e.psi[j] * e.psi[j];
    const double tot = e.sigma_eps2 + e.sigma_v2;
    const double r = e.sigma_v2 / tot;
    return head + e.psi[k] * e.psi[k] * r * r * (e.sigma_v2 - e.sigma_eps2) / tot;
}

// Exact partial in sigma_v2: 2 psi_k^2 sigma_eps2^2 sigma_v2 / (.)^3,
// strictly positive whenever sigma_v2 > 0 and psi_k != 0.
inline double d_fev_d_sigma_v2(const MaEconomy& e, int k) {
    validate(e);
    detail::check_horizon(e, k);
    const double tot = e.sigma_eps2 + e.sigma_v2;
    return 2.0 * e.psi[k] * e.psi[k] * e.sigma_eps2 * e.sigma_eps2 * e.sigma_v2 /
           (tot * tot * tot);
}

struct InvertibilityReport {
    bool invertible = true;
    std::vector<double> root_moduli;
    bool leading_sq_exceeds_last = false; // psi_0^2 > psi_k^2
};

// Roots of psi(z) = psi_0 z^k + psi_1 z^{k-1} + ... + psi_k via the
// companion matrix. Invertible iff every modulus is strictly below 1,
// which forces psi_0^2 > psi_k^2 (product of root moduli < 1).
inline InvertibilityReport check_invertibility(const std::vector<double>& psi) {
    if (psi.empty()) throw numeric_error("empty MA coefficient vector");
    if (psi[0] == 0.0)
        throw numeric_error("degenerate MA polynomial: leading coefficient is zero");
    const int k = static_cast<int>(psi.size()) - 1;
    InvertibilityReport rep;
    rep.leading_sq_exceeds_last = psi[0] * psi[0] > psi[k] * psi[k];
    if (k == 0) return rep;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(k, k);
    for (int j = 0; j < k; ++j) comp(0, j) = -psi[j + 1] / psi[0];
    for (int i = 1; i < k; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> eig(comp, false);
    if (eig.info() != Eigen::Success)
        throw numeric_error("eigen solve for MA roots failed");
    rep.root_moduli.resize(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) {
        rep.root_moduli[static_cast<size_t>(i)] = std::abs(eig.eigenvalues()(i));
        if (!(rep.root_moduli[static_cast<size_t>(i)] < 1.0)) rep.invertible = false;
    }
    return rep;
}

// Geometric coefficients psi_j = beta^j, j = 0..n; invertible for |beta| < 1.
inline std::vector<double> geometric_coefficients(double beta, int n) {
    if (!(beta > -1.0 && beta < 1.0))
        throw numeric_error("geometric MA coefficients need |beta| < 1");
    if (n < 0) throw numeric_error("MA order must be nonnegative");
    std::vector<double> psi(static_cast<size_t>(n) + 1);
    double p = 1.0;
    for (int j = 0; j <= n; ++j) {
        psi[static_cast<size_t>(j)] = p;
        p *= beta;
    }
    return psi;
}

} // namespace disagvar::dispersion

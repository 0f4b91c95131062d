#pragma once

// Test-side implementation of the model's joint prior, written directly from
// the model statement (tangent draw for the half-Cauchy scales rather than the
// sampler's inverse-gamma ladder) so it works as an independent oracle.

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "disagvar/bvar/config.hpp"
#include "disagvar/bvar/sampler.hpp"
#include "disagvar/core/rng.hpp"

namespace oracles {

inline double half_cauchy_sq(disagvar::rng::Stream& g) {
    const double u = g.uniform01();
    const double c = std::tan(1.57079632679489661923 * u);
    return c * c;
}

inline disagvar::bvar::GibbsState prior_draw(const disagvar::bvar::VarConfig& c,
                                             int k, long t,
                                             disagvar::rng::Stream& g) {
    namespace bv = disagvar::bvar;
    const int n = c.n_vars;
    const int r = c.n_factors;
    const double inf = std::numeric_limits<double>::infinity();

    bv::GibbsState s;
    s.phi.resize(n, k);
    s.lambda.resize(n, r);
    s.sigma2.resize(n);
    s.factors.resize(t, r);
    s.psi2.resize(n, k);
    s.tau2.resize(n);
    s.nu.resize(n, k);
    s.xi.resize(n);

    for (int i = 0; i < n; ++i) {
        s.tau2(i) = half_cauchy_sq(g);
        s.xi(i) = g.inv_gamma(1.0, 1.0 + 1.0 / s.tau2(i));
        for (int j = 0; j < k; ++j) {
            s.psi2(i, j) = half_cauchy_sq(g);
            s.nu(i, j) = g.inv_gamma(1.0, 1.0 + 1.0 / s.psi2(i, j));
        }
        s.sigma2(i) = g.inv_gamma(c.prior.rho(i), c.prior.kappa(i));
        for (int j = 0; j < k; ++j)
            s.phi(i, j) =
                g.normal(0.0, std::sqrt(s.sigma2(i) * s.tau2(i) * s.psi2(i, j)));
        for (int j = 0; j < r; ++j) {
            const double sd = std::sqrt(c.prior.h(i, j));
            switch (c.pattern.at(i, j)) {
                case bv::Sign::zero: s.lambda(i, j) = 0.0; break;
                case bv::Sign::positive:
                    s.lambda(i, j) =
                        disagvar::rng::truncated_normal(g, 0.0, sd, 0.0, inf);
                    break;
                case bv::Sign::negative:
                    s.lambda(i, j) =
                        disagvar::rng::truncated_normal(g, 0.0, sd, -inf, 0.0);
                    break;
                default: s.lambda(i, j) = g.normal(0.0, sd);
            }
        }
    }
    for (long tt = 0; tt < t; ++tt)
        for (int j = 0; j < r; ++j) s.factors(tt, j) = g.normal();
    return s;
}

inline Eigen::MatrixXd simulate_y(const disagvar::bvar::GibbsState& s,
                                  const Eigen::MatrixXd& x,
                                  disagvar::rng::Stream& g) {
    const long t = x.rows();
    const int n = static_cast<int>(s.phi.rows());
    Eigen::MatrixXd y =
        x * s.phi.transpose() + s.factors * s.lambda.transpose();
    for (long tt = 0; tt < t; ++tt)
        for (int i = 0; i < n; ++i)
            y(tt, i) += g.normal(0.0, std::sqrt(s.sigma2(i)));
    return y;
}

} // namespace oracles

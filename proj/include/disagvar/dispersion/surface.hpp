#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "disagvar/core/parallel.hpp"
#include "disagvar/dispersion/panel.hpp"

namespace disagvar::dispersion {

// Mean synthetic tail disagreement over a grid of (sigma_eps2, sigma_v2),
// row index over grid_eps2, column index over grid_v2, row-major storage.
struct DisagreementSurface {
    std::vector<double> grid_eps2;
    std::vector<double> grid_v2;
    std::vector<double> tilde_t; // cell means
    std::vector<double> se;      // Monte Carlo standard error per cell
    int replications = 0;
    std::uint64_t seed = 0;
    double beta = 0.0;
    int ma_order = 0;
    int horizon = 0;
    int n_agents = 0;

    double mean_at(size_t i_eps, size_t j_v) const {
        return tilde_t[i_eps * grid_v2.size() + j_v];
    }
    double se_at(size_t i_eps, size_t j_v) const {
        return se[i_eps * grid_v2.size() + j_v];
    }
};

// Averages synthetic_tail_index over `replications` independent panel draws
// per cell, with psi_j = beta^j. Every (cell, replication) unit derives its
// own stream from (seed, cell indices, replication), so results do not
// depend on scheduling and repeat bit-for-bit under the same seed.
inline DisagreementSurface disagreement_surface(
    const std::vector<double>& grid_eps2, const std::vector<double>& grid_v2,
    double beta, int n, int k, int n_agents, int replications,
    std::uint64_t seed) {
    if (grid_eps2.empty() || grid_v2.empty())
        throw numeric_error("surface grids must be nonempty");
    if (replications < 1) throw numeric_error("replications must be positive");
    const std::vector<double> psi = geometric_coefficients(beta, n);

    DisagreementSurface s;
    s.grid_eps2 = grid_eps2;
    s.grid_v2 = grid_v2;
    s.replications = replications;
    s.seed = seed;
    s.beta = beta;
    s.ma_order = n;
    s.horizon = k;
    s.n_agents = n_agents;
    const size_t cells = grid_eps2.size() * grid_v2.size();
    s.tilde_t.assign(cells, 0.0);
    s.se.assign(cells, 0.0);

    parallel_for(cells, [&](size_t cell) {
        const size_t i = cell / grid_v2.size();
        const size_t j = cell % grid_v2.size();
        MaEconomy e;
        e.psi = psi;
        e.sigma_eps2 = grid_eps2[i];
        e.sigma_v2 = grid_v2[j];
        e.n_agents = n_agents;
        double sum = 0.0, sumsq = 0.0;
        for (int rep = 0; rep < replications; ++rep) {
            rng::Stream stream = rng::Stream::derive(
                seed, {static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j),
                       static_cast<std::uint64_t>(rep)});
            const double t = synthetic_tail_index(simulate_panel(e, k, stream));
            sum += t;
            sumsq += t * t;
        }
        const double m = sum / replications;
        s.tilde_t[cell] = m;
        if (replications > 1) {
            const double var =
                (sumsq - sum * m) / static_cast<double>(replications - 1);
            s.se[cell] = std::sqrt(std::max(0.0, var) / replications);
        }
    });
    return s;
}

} // namespace disagvar::dispersion

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "disagvar/core/rng.hpp"
#include "disagvar/dispersion/economy.hpp"

namespace disagvar::dispersion {

// One cross-section of agent forecasts for k-step-ahead growth.
struct PanelDraw {
    // [0] is the current shock eps_t; [1..] are the lagged shocks
    // eps_{t-1} .. eps_{t-(n-k)} that every agent observes exactly.
    std::vector<double> fundamental_shocks;
    std::vector<double> agent_noise; // v_i, one per agent
    std::vector<double> forecasts;   // conditional expectations, one per agent
    std::vector<int> codes;          // +1 / -1 / 0 by strict sign of the forecast
};

// Each agent forecasts growth k periods ahead: future shocks are mean zero,
// lagged shocks are known, and the current one is filtered from the private
// signal with weight gamma. Codes follow the strict sign of the forecast;
// an exact zero counts toward neither pole.
inline PanelDraw simulate_panel(const MaEconomy& e, int k, rng::Stream& stream) {
    validate(e);
    detail::check_horizon(e, k);
    const auto rep = check_invertibility(e.psi);
    if (!rep.invertible)
        throw numeric_error("panel simulation requires an invertible MA economy");
    const int n = e.order();
    const double sd_eps = std::sqrt(e.sigma_eps2);
    const double sd_v = std::sqrt(e.sigma_v2);
    const double gamma = projection_coefficient(e.sigma_eps2, e.sigma_v2);

    PanelDraw d;
    d.fundamental_shocks.resize(static_cast<size_t>(n - k) + 1);
    for (auto& eps : d.fundamental_shocks) eps = sd_eps * stream.normal();

    // Common component: filtered current shock plus exactly known lags.
    double common = e.psi[static_cast<size_t>(k)] * gamma * d.fundamental_shocks[0];
    for (int j = k + 1; j <= n; ++j)
        common += e.psi[static_cast<size_t>(j)] *
                  d.fundamental_shocks[static_cast<size_t>(j - k)];

    const double w = e.psi[static_cast<size_t>(k)] * gamma;
    d.agent_noise.resize(static_cast<size_t>(e.n_agents));
    d.forecasts.resize(static_cast<size_t>(e.n_agents));
    d.codes.resize(static_cast<size_t>(e.n_agents));
    for (size_t i = 0; i < d.agent_noise.size(); ++i) {
        d.agent_noise[i] = sd_v * stream.normal();
        const double f = common + w * d.agent_noise[i];
        d.forecasts[i] = f;
        d.codes[i] = f > 0.0 ? 1 : (f < 0.0 ? -1 : 0);
    }
    return d;
}

inline PanelDraw simulate_panel(const MaEconomy& e, int k, std::uint64_t seed) {
    rng::Stream s = rng::Stream::derive(seed, {});
    return simulate_panel(e, k, s);
}

// Synthetic counterpart of the survey tail index: 1 - |net balance| / N.
inline double synthetic_tail_index(const PanelDraw& d) {
    if (d.codes.empty()) throw numeric_error("empty panel draw");
    long net = 0;
    for (int c : d.codes) net += c;
    return 1.0 - std::fabs(static_cast<double>(net)) /
                     static_cast<double>(d.codes.size());
}

} // namespace disagvar::dispersion

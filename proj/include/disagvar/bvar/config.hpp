#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "disagvar/core/errors.hpp"

namespace disagvar::bvar {

// Restriction on one impact-period loading.
enum class Sign : int { negative = -1, zero = 0, positive = 1, unrestricted = 9 };

inline Sign parse_sign(const std::string& s) {
    if (s == "+") return Sign::positive;
    if (s == "-") return Sign::negative;
    if (s == "0") return Sign::zero;
    if (s == "." || s == "u") return Sign::unrestricted;
    throw config_error("unknown sign restriction '" + s + "' (use +, -, 0 or .)");
}

inline const char* to_string(Sign s) {
    switch (s) {
        case Sign::negative: return "-";
        case Sign::zero: return "0";
        case Sign::positive: return "+";
        default: return ".";
    }
}

// n_vars x n_shocks grid of impact restrictions.
struct SignPattern {
    int n_vars = 0;
    int n_shocks = 0;
    std::vector<Sign> cells; // row-major, all unrestricted by default

    SignPattern() = default;
    SignPattern(int n, int r)
        : n_vars(n), n_shocks(r),
          cells(static_cast<size_t>(n) * static_cast<size_t>(r), Sign::unrestricted) {}

    Sign& at(int i, int j) { return cells[static_cast<size_t>(i) * n_shocks + j]; }
    Sign at(int i, int j) const { return cells[static_cast<size_t>(i) * n_shocks + j]; }
};

// Every shock column needs at least one restriction to pin the shock down,
// and a column of hard zeros leaves nothing for the shock to load on.
inline void validate(const SignPattern& p) {
    if (p.n_vars < 1 || p.n_shocks < 1)
        throw config_error("sign pattern must have at least one variable and one shock");
    if (p.cells.size() != static_cast<size_t>(p.n_vars) * p.n_shocks)
        throw config_error("sign pattern cell count does not match its dimensions");
    for (int j = 0; j < p.n_shocks; ++j) {
        bool any_restricted = false;
        bool any_nonzero = false;
        for (int i = 0; i < p.n_vars; ++i) {
            if (p.at(i, j) != Sign::unrestricted) any_restricted = true;
            if (p.at(i, j) != Sign::zero) any_nonzero = true;
        }
        if (!any_restricted)
            throw config_error("sign pattern column " + std::to_string(j + 1) +
                               " is fully unrestricted: the shock is unidentified");
        if (!any_nonzero)
            throw config_error("sign pattern column " + std::to_string(j + 1) +
                               " is all zeros: the shock cannot load on anything");
    }
}

struct McmcSettings {
    long draws = 0;
    long burn_in = 0;
    long thin = 1;
    std::uint64_t seed = 0;

    long retained() const { return (draws - burn_in) / thin; }
};

// Settings used for the headline runs: 600k iterations, 100k burn-in,
// keep every 100th draw (5000 retained).
inline McmcSettings headline_mcmc_settings() { return {600000, 100000, 100, 0}; }

// Scaled-down settings for interactive work and the test harness.
inline McmcSettings desk_mcmc_settings() { return {12000, 2000, 5, 0}; }

// Hyperparameters: loading prior variances h_ij, and the inverse-gamma
// shape/rate for the idiosyncratic variances. Scalar defaults apply to
// every entry; explicit overrides replace single entries and leave the
// rest at defaults.
struct PriorConfig {
    double loading_var = 10.0;
    double sigma_shape = 0.01;
    double sigma_rate = 0.01;
    std::map<std::pair<int, int>, double> loading_var_override;
    std::map<int, double> sigma_shape_override;
    std::map<int, double> sigma_rate_override;

    void set_loading_var(int i, int j, double v) {
        if (!(v > 0.0)) throw config_error("loading prior variance must be positive");
        loading_var_override[{i, j}] = v;
    }
    void set_sigma_shape(int i, double v) {
        if (!(v > 0.0)) throw config_error("sigma prior shape must be positive");
        sigma_shape_override[i] = v;
    }
    void set_sigma_rate(int i, double v) {
        if (!(v > 0.0)) throw config_error("sigma prior rate must be positive");
        sigma_rate_override[i] = v;
    }

    double h(int i, int j) const {
        auto it = loading_var_override.find({i, j});
        return it == loading_var_override.end() ? loading_var : it->second;
    }
    double rho(int i) const {
        auto it = sigma_shape_override.find(i);
        return it == sigma_shape_override.end() ? sigma_shape : it->second;
    }
    double kappa(int i) const {
        auto it = sigma_rate_override.find(i);
        return it == sigma_rate_override.end() ? sigma_rate : it->second;
    }
};

inline PriorConfig prior_defaults() { return {}; }

struct VarConfig {
    int n_vars = 0;
    int n_lags = 0;
    int n_factors = 0;
    SignPattern pattern;
    McmcSettings mcmc;
    PriorConfig prior;
    std::vector<std::string> var_names;   // optional, sized n_vars when set
    std::vector<std::string> shock_names; // optional, sized n_factors when set
};

inline void validate(const VarConfig& c) {
    if (c.n_vars < 1) throw config_error("n_vars must be positive");
    if (c.n_lags < 1) throw config_error("n_lags must be at least 1");
    if (c.n_factors < 1) throw config_error("n_factors must be at least 1");
    if (c.n_factors >= c.n_vars)
        throw config_error("n_factors must be smaller than n_vars");
    if (c.mcmc.draws < 1) throw config_error("draws must be positive");
    if (c.mcmc.burn_in < 0 || c.mcmc.burn_in >= c.mcmc.draws)
        throw config_error("burn_in must be nonnegative and smaller than draws");
    if (c.mcmc.thin < 1) throw config_error("thin must be at least 1");
    if (c.pattern.n_vars != c.n_vars || c.pattern.n_shocks != c.n_factors)
        throw config_error("sign pattern dimensions must be n_vars x n_factors");
    validate(c.pattern);
    if (!c.var_names.empty() && c.var_names.size() != static_cast<size_t>(c.n_vars))
        throw config_error("var_names must list one name per variable");
    if (!c.shock_names.empty() &&
        c.shock_names.size() != static_cast<size_t>(c.n_factors))
        throw config_error("shock_names must list one name per factor");
    if (!(c.prior.loading_var > 0.0) || !(c.prior.sigma_shape > 0.0) ||
        !(c.prior.sigma_rate > 0.0))
        throw config_error("prior hyperparameters must be positive");
}

} // namespace disagvar::bvar

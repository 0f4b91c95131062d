#pragma once

// Pointwise posterior band summaries across retained draws. Draws flagged as
// explosive are dropped from every quantile; the number dropped is carried on
// the summary so downstream outputs can report it.

#include <string>
#include <vector>

#include "disagvar/core/errors.hpp"
#include "disagvar/core/stats.hpp"
#include "disagvar/structural/impulse.hpp"

namespace disagvar::structural {

struct BandedPaths {
    int n_vars = 0;
    int n_shocks = 0;
    int horizon = 0;
    std::vector<double> levels;
    size_t draws_used = 0;
    size_t draws_excluded = 0;
    std::vector<double> values; // var x shock x level x horizon

    double at(int var, int shock, size_t level, int h) const {
        return values[((static_cast<size_t>(var) * n_shocks + shock) *
                           levels.size() +
                       level) *
                          (horizon + 1) +
                      h];
    }
    double& at(int var, int shock, size_t level, int h) {
        return values[((static_cast<size_t>(var) * n_shocks + shock) *
                           levels.size() +
                       level) *
                          (horizon + 1) +
                      h];
    }
};

inline const std::vector<double>& default_band_levels() {
    static const std::vector<double> levels{0.16, 0.50, 0.84};
    return levels;
}

// Pointwise quantiles across non-explosive draws for every
// (variable, shock, horizon) cell. Works on response sets and variance
// decompositions alike; both expose the same draw-indexed layout.
template <class Set>
BandedPaths posterior_bands(const Set& set,
                            const std::vector<double>& levels =
                                default_band_levels()) {
    if (set.n_draws < 2)
        throw data_error("band summaries need at least two retained draws");
    if (levels.empty())
        throw config_error("band summaries need at least one quantile level");
    for (double q : levels)
        if (!(q > 0.0 && q < 1.0))
            throw config_error("band levels must lie strictly inside (0, 1)");

    BandedPaths out;
    out.n_vars = set.n_vars;
    out.n_shocks = set.n_shocks;
    out.horizon = set.horizon;
    out.levels = levels;
    out.draws_excluded = set.excluded_count();
    out.draws_used = set.n_draws - out.draws_excluded;
    if (out.draws_used == 0)
        throw numeric_error("all " + std::to_string(set.n_draws) +
                            " draws have explosive dynamics; no bands to "
                            "compute");
    out.values.resize(static_cast<size_t>(set.n_vars) * set.n_shocks *
                      levels.size() * (set.horizon + 1));

    std::vector<double> cell;
    cell.reserve(out.draws_used);
    for (int i = 0; i < set.n_vars; ++i)
        for (int j = 0; j < set.n_shocks; ++j)
            for (int h = 0; h <= set.horizon; ++h) {
                cell.clear();
                for (size_t d = 0; d < set.n_draws; ++d)
                    if (!set.explosive[d]) cell.push_back(set.at(d, i, j, h));
                for (size_t q = 0; q < levels.size(); ++q)
                    out.at(i, j, q, h) = stats::quantile(cell, levels[q]);
            }
    return out;
}

} // namespace disagvar::structural

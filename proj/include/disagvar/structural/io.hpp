#pragma once

// Plot-ready CSV outputs for band summaries: one row per
// (variable, shock, horizon) with one column per quantile level, plus a JSON
// manifest recording how many draws fed the bands and how many were dropped
// as explosive.

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disagvar/core/csv.hpp"
#include "disagvar/core/errors.hpp"
#include "disagvar/structural/bands.hpp"

namespace disagvar::structural {

namespace detail {

inline std::string level_column(double level) {
    const double pct = 100.0 * level;
    const double rounded = std::round(pct);
    if (std::abs(pct - rounded) < 1e-9)
        return "q" + std::to_string(static_cast<int>(rounded));
    return "q" + format_double(pct);
}

inline void write_band_csv(const std::filesystem::path& path,
                           const BandedPaths& bands,
                           const std::vector<std::string>& var_names,
                           const std::vector<std::string>& shock_names) {
    if (static_cast<int>(var_names.size()) != bands.n_vars)
        throw config_error("band output needs one name per variable");
    if (static_cast<int>(shock_names.size()) != bands.n_shocks)
        throw config_error("band output needs one name per shock column");
    std::vector<std::string> header{"variable", "shock", "horizon"};
    for (double level : bands.levels) header.push_back(level_column(level));
    CsvWriter w(header);
    for (int i = 0; i < bands.n_vars; ++i)
        for (int j = 0; j < bands.n_shocks; ++j)
            for (int h = 0; h <= bands.horizon; ++h) {
                std::vector<std::string> row{var_names[i], shock_names[j],
                                             std::to_string(h)};
                for (size_t q = 0; q < bands.levels.size(); ++q)
                    row.push_back(format_double(bands.at(i, j, q, h)));
                w.row(row);
            }
    w.save(path.string());
}

inline nlohmann::json summary_manifest(const BandedPaths& bands,
                                       const std::vector<std::string>& var_names,
                                       const std::vector<std::string>& shock_names) {
    nlohmann::json m;
    m["horizon"] = bands.horizon;
    m["draws_used"] = bands.draws_used;
    m["draws_excluded_explosive"] = bands.draws_excluded;
    m["variables"] = var_names;
    m["shocks"] = shock_names;
    return m;
}

} // namespace detail

// With the residual share appended, the shock axis of a decomposition is one
// longer than the model's shock list.
inline std::vector<std::string> with_residual(std::vector<std::string> shocks) {
    shocks.push_back("residual");
    return shocks;
}

// irf.csv and irf_cumulative.csv plus a manifest.
inline void write_irf_outputs(const std::filesystem::path& dir,
                              const BandedPaths& irf_bands,
                              const BandedPaths& irf_cumulative_bands,
                              const std::vector<std::string>& var_names,
                              const std::vector<std::string>& shock_names) {
    std::filesystem::create_directories(dir);
    detail::write_band_csv(dir / "irf.csv", irf_bands, var_names, shock_names);
    detail::write_band_csv(dir / "irf_cumulative.csv", irf_cumulative_bands,
                           var_names, shock_names);
    nlohmann::json m = detail::summary_manifest(irf_bands, var_names, shock_names);
    m["band_levels"] = irf_bands.levels;
    write_file_atomic(dir / "manifest.json", m.dump(2) + "\n");
}

// fevd.csv plus a manifest; shock names gain the trailing residual slot.
inline void write_fevd_outputs(const std::filesystem::path& dir,
                               const BandedPaths& fevd_bands,
                               const std::vector<std::string>& var_names,
                               const std::vector<std::string>& shock_names) {
    std::filesystem::create_directories(dir);
    detail::write_band_csv(dir / "fevd.csv", fevd_bands, var_names,
                           with_residual(shock_names));
    nlohmann::json m = detail::summary_manifest(fevd_bands, var_names, shock_names);
    m["fevd_levels"] = fevd_bands.levels;
    write_file_atomic(dir / "manifest.json", m.dump(2) + "\n");
}

// All structural outputs of one run in a single directory.
inline void write_structural(const std::filesystem::path& dir,
                             const BandedPaths& irf_bands,
                             const BandedPaths& irf_cumulative_bands,
                             const BandedPaths& fevd_bands,
                             const std::vector<std::string>& var_names,
                             const std::vector<std::string>& shock_names) {
    std::filesystem::create_directories(dir);
    detail::write_band_csv(dir / "irf.csv", irf_bands, var_names, shock_names);
    detail::write_band_csv(dir / "irf_cumulative.csv", irf_cumulative_bands,
                           var_names, shock_names);
    detail::write_band_csv(dir / "fevd.csv", fevd_bands, var_names,
                           with_residual(shock_names));
    nlohmann::json m = detail::summary_manifest(irf_bands, var_names, shock_names);
    m["band_levels"] = irf_bands.levels;
    m["fevd_levels"] = fevd_bands.levels;
    write_file_atomic(dir / "manifest.json", m.dump(2) + "\n");
}

} // namespace disagvar::structural

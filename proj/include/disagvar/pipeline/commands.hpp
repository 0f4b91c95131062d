#pragma once

// Command layer behind the command-line tool. Each run_* function loads its
// inputs (a config file or a directory of stored draws), executes one stage,
// and writes that stage's outputs under a target directory:
//
//   index     out/index.csv, out/manifest.json
//   simulate  out/surface.csv, out/manifest.json
//   estimate  out/config.toml, out/dataset.csv, out/run.json, out/draws/*
//   irf       out/irf.csv, out/irf_cumulative.csv, out/manifest.json
//   fevd      out/fevd.csv, out/manifest.json
//   pipeline  estimate outputs plus out/index/* and out/structural/*
//
// Everything written is deterministic given the config and seed, except the
// wall_time_seconds entry in the draws manifest.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "disagvar/bvar/config.hpp"
#include "disagvar/bvar/design.hpp"
#include "disagvar/bvar/draws_io.hpp"
#include "disagvar/bvar/sampler.hpp"
#include "disagvar/core/csv.hpp"
#include "disagvar/core/errors.hpp"
#include "disagvar/core/period.hpp"
#include "disagvar/dispersion/surface.hpp"
#include "disagvar/pipeline/config_file.hpp"
#include "disagvar/pipeline/dataset.hpp"
#include "disagvar/pipeline/run_config.hpp"
#include "disagvar/pipeline/transform.hpp"
#include "disagvar/structural/bands.hpp"
#include "disagvar/structural/impulse.hpp"
#include "disagvar/structural/io.hpp"
#include "disagvar/survey/measures.hpp"
#include "disagvar/survey/pca.hpp"
#include "disagvar/survey/series.hpp"

namespace disagvar::pipeline {

namespace detail {

inline std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Keeps a verbatim copy of the config next to the outputs it produced.
inline void copy_config(const std::filesystem::path& config_path,
                        const std::filesystem::path& out_dir) {
    write_file_atomic(out_dir / "config.toml", slurp(config_path));
}

inline void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

// Restricts an index to periods with serial numbers in [lo, hi].
inline survey::DisagreementIndex trim_index(const survey::DisagreementIndex& ix,
                                            long lo, long hi) {
    survey::DisagreementIndex out;
    out.method = ix.method;
    out.standardized = ix.standardized;
    for (size_t t = 0; t < ix.dates.size(); ++t) {
        const long s = ix.dates[t].serial();
        if (s < lo || s > hi) continue;
        out.dates.push_back(ix.dates[t]);
        out.values.push_back(ix.values[t]);
    }
    return out;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Survey index
// ---------------------------------------------------------------------------

// Computes the configured per-question measure for every question, restricts
// all of them to the common sample, standardizes, and (with two or more
// questions) combines them into the first principal component. A single
// question yields its standardized measure directly.
inline survey::DisagreementIndex compute_index(
    const IndexConfig& cfg, const std::filesystem::path& data_dir) {
    std::vector<survey::DisagreementIndex> measured;
    std::vector<std::string> ids;
    for (const auto& [id, file] : cfg.questions) {
        const auto series = survey::read_categorical_csv(data_dir / file, id);
        for (size_t t = 0; t + 1 < series.dates.size(); ++t)
            if (!(series.dates[t].next() == series.dates[t + 1]))
                throw data_error("question " + id + ": gap after " +
                                 series.dates[t].str());
        switch (cfg.method) {
            case survey::IndexMethod::tail:
                measured.push_back(survey::tail_disagreement(series));
                break;
            case survey::IndexMethod::entropy:
                measured.push_back(survey::entropy_disagreement(series));
                break;
            case survey::IndexMethod::lacy:
                measured.push_back(survey::lacy_disagreement(series));
                break;
            case survey::IndexMethod::pca:
                throw config_error(
                    "pca is the aggregation step, not a question measure");
        }
        ids.push_back(id);
    }

    if (measured.size() == 1) {
        auto out = survey::standardize(std::move(measured.front()));
        out.source_questions = ids;
        out.loadings = {1.0};
        out.explained_variance_share = 1.0;
        return out;
    }

    const Frequency freq = measured.front().dates.front().freq;
    long lo = measured.front().dates.front().serial();
    long hi = measured.front().dates.back().serial();
    for (size_t j = 1; j < measured.size(); ++j) {
        if (measured[j].dates.front().freq != freq)
            throw data_error("questions " + ids[0] + " and " + ids[j] +
                             " are sampled at different frequencies");
        lo = std::max(lo, measured[j].dates.front().serial());
        hi = std::min(hi, measured[j].dates.back().serial());
    }
    if (lo > hi)
        throw data_error("questions share no common sample period");

    std::vector<survey::DisagreementIndex> aligned;
    for (const auto& ix : measured)
        aligned.push_back(survey::standardize(detail::trim_index(ix, lo, hi)));
    return survey::pca_first_component(aligned, ids);
}

// Writes index.csv (date,value) and a manifest describing the aggregation.
inline void write_index_outputs(const std::filesystem::path& out_dir,
                                const survey::DisagreementIndex& index,
                                const IndexConfig& cfg) {
    std::filesystem::create_directories(out_dir);
    CsvWriter w({"date", "value"});
    for (size_t t = 0; t < index.dates.size(); ++t)
        w.row({index.dates[t].str(), format_double(index.values[t])});
    w.save((out_dir / "index.csv").string());

    nlohmann::json m;
    m["mnemonic"] = cfg.mnemonic;
    m["method"] = survey::to_string(cfg.method);
    m["questions"] = index.source_questions;
    m["loadings"] = index.loadings;
    m["explained_variance_share"] = index.explained_variance_share;
    m["observations"] = index.dates.size();
    m["sample_start"] = index.dates.front().str();
    m["sample_end"] = index.dates.back().str();
    write_file_atomic(out_dir / "manifest.json", m.dump(2) + "\n");
}

inline ValueSeries as_value_series(const survey::DisagreementIndex& index,
                                   const std::string& mnemonic) {
    return ValueSeries{mnemonic, index.dates, index.values};
}

inline void run_index(const std::filesystem::path& config_path,
                      const std::filesystem::path& out_dir) {
    const ConfigDoc doc = read_config(config_path);
    const IndexConfig cfg = parse_index_config(doc);
    const auto data_dir = resolve_data_dir(doc, config_path.parent_path());
    const auto index = compute_index(cfg, data_dir);
    std::filesystem::create_directories(out_dir);
    detail::copy_config(config_path, out_dir);
    write_index_outputs(out_dir, index, cfg);
    std::cerr << "index: " << index.dates.size() << " observations, "
              << index.source_questions.size() << " question(s), "
              << index.dates.front().str() << " to " << index.dates.back().str()
              << "\n";
}

// ---------------------------------------------------------------------------
// Synthetic dispersion surface
// ---------------------------------------------------------------------------

inline void write_surface_outputs(const std::filesystem::path& out_dir,
                                  const dispersion::DisagreementSurface& s) {
    std::filesystem::create_directories(out_dir);
    CsvWriter w({"sigma_eps2", "sigma_v2", "mean", "se"});
    for (size_t i = 0; i < s.grid_eps2.size(); ++i)
        for (size_t j = 0; j < s.grid_v2.size(); ++j)
            w.row({format_double(s.grid_eps2[i]), format_double(s.grid_v2[j]),
                   format_double(s.mean_at(i, j)), format_double(s.se_at(i, j))});
    w.save((out_dir / "surface.csv").string());

    nlohmann::json m;
    m["beta"] = s.beta;
    m["ma_order"] = s.ma_order;
    m["horizon"] = s.horizon;
    m["agents"] = s.n_agents;
    m["replications"] = s.replications;
    m["seed"] = s.seed;
    m["grid_eps2"] = s.grid_eps2;
    m["grid_v2"] = s.grid_v2;
    write_file_atomic(out_dir / "manifest.json", m.dump(2) + "\n");
}

inline void run_simulate(const std::filesystem::path& config_path,
                         const std::filesystem::path& out_dir,
                         std::optional<std::uint64_t> seed_override = {}) {
    const ConfigDoc doc = read_config(config_path);
    SurfaceConfig cfg = parse_surface_config(doc);
    if (seed_override) cfg.seed = *seed_override;
    const auto surface = dispersion::disagreement_surface(
        cfg.grid_eps2, cfg.grid_v2, cfg.beta, cfg.ma_order, cfg.horizon,
        cfg.agents, cfg.replications, cfg.seed);
    std::filesystem::create_directories(out_dir);
    detail::copy_config(config_path, out_dir);
    write_surface_outputs(out_dir, surface);
    std::cerr << "simulate: " << cfg.grid_eps2.size() << "x" << cfg.grid_v2.size()
              << " grid, " << cfg.replications << " replications per cell\n";
}

// ---------------------------------------------------------------------------
// Estimation
// ---------------------------------------------------------------------------

struct EstimationArtifacts {
    Dataset dataset;
    EstimateConfig config;
    bvar::McmcResult result;
};

// Assembles the panel, runs the chain, and stores the dataset and draws.
// `preloaded` lets the pipeline command feed the index step's output to
// series whose file is declared as "@index".
inline EstimationArtifacts run_estimate(
    const std::filesystem::path& config_path, const std::filesystem::path& out_dir,
    std::optional<std::uint64_t> seed_override = {},
    const std::map<std::string, ValueSeries>& preloaded = {}) {
    const ConfigDoc doc = read_config(config_path);
    EstimateConfig cfg = parse_estimate_config(doc, config_path.parent_path());
    if (seed_override) cfg.var.mcmc.seed = *seed_override;

    Dataset dataset = assemble_dataset(cfg.series, cfg.data_dir, cfg.sample_start,
                                       cfg.sample_end, preloaded);
    detail::print_warnings(dataset.warnings);

    const bvar::DesignData design = bvar::build_design(dataset.values,
                                                       cfg.var.n_lags);
    detail::print_warnings(design.warnings);

    const bvar::McmcResult result = bvar::run_mcmc(design, cfg.var);

    std::filesystem::create_directories(out_dir);
    detail::copy_config(config_path, out_dir);
    write_dataset(out_dir / "dataset.csv", dataset);
    bvar::write_draws(out_dir / "draws", result, cfg.var);

    nlohmann::json run;
    run["command"] = "estimate";
    run["sample_start"] = dataset.dates.front().str();
    run["sample_end"] = dataset.dates.back().str();
    run["t_obs"] = dataset.t_obs();
    run["n_vars"] = dataset.n_vars();
    std::vector<std::string> warnings = dataset.warnings;
    warnings.insert(warnings.end(), design.warnings.begin(),
                    design.warnings.end());
    run["warnings"] = warnings;
    write_file_atomic(out_dir / "run.json", run.dump(2) + "\n");

    std::cerr << "estimate: retained " << result.draws.size() << " draws ("
              << dataset.t_obs() << " periods, " << dataset.n_vars()
              << " variables) in " << format_double(
                     result.diagnostics.wall_seconds) << "s\n";
    return EstimationArtifacts{std::move(dataset), std::move(cfg),
                               std::move(result)};
}

// ---------------------------------------------------------------------------
// Structural summaries from stored draws
// ---------------------------------------------------------------------------

inline void run_irf(const std::filesystem::path& draws_dir,
                    const std::filesystem::path& out_dir, int horizon,
                    std::vector<double> levels = structural::default_band_levels()) {
    const bvar::StoredDraws stored = bvar::read_draws(draws_dir);
    const auto irfs = structural::impulse_responses(stored.draws, horizon);
    const auto irf_bands = structural::posterior_bands(irfs, levels);
    const auto cum_bands =
        structural::posterior_bands(structural::cumulative(irfs), levels);
    structural::write_irf_outputs(out_dir, irf_bands, cum_bands,
                                  stored.var_names, stored.shock_names);
    std::cerr << "irf: horizon " << horizon << ", " << irf_bands.draws_used
              << " draws used, " << irf_bands.draws_excluded
              << " explosive draws excluded\n";
}

inline void run_fevd(const std::filesystem::path& draws_dir,
                     const std::filesystem::path& out_dir, int horizon,
                     std::vector<double> levels = {0.5}) {
    const bvar::StoredDraws stored = bvar::read_draws(draws_dir);
    const auto shares = structural::fevd(stored.draws, horizon);
    const auto bands = structural::posterior_bands(shares, levels);
    structural::write_fevd_outputs(out_dir, bands, stored.var_names,
                                   stored.shock_names);
    std::cerr << "fevd: horizon " << horizon << ", " << bands.draws_used
              << " draws used, " << bands.draws_excluded
              << " explosive draws excluded\n";
}

// ---------------------------------------------------------------------------
// Full pipeline: optional index step, estimation, structural summaries
// ---------------------------------------------------------------------------

inline void run_pipeline(const std::filesystem::path& config_path,
                         const std::filesystem::path& out_dir,
                         std::optional<std::uint64_t> seed_override = {}) {
    const ConfigDoc doc = read_config(config_path);

    std::map<std::string, ValueSeries> preloaded;
    if (doc.has_table("index")) {
        const IndexConfig icfg = parse_index_config(doc);
        const auto data_dir = resolve_data_dir(doc, config_path.parent_path());
        const auto index = compute_index(icfg, data_dir);
        write_index_outputs(out_dir / "index", index, icfg);
        preloaded.emplace(icfg.mnemonic, as_value_series(index, icfg.mnemonic));
        std::cerr << "pipeline: index '" << icfg.mnemonic << "' computed ("
                  << index.dates.size() << " observations)\n";
    }

    const EstimationArtifacts art =
        run_estimate(config_path, out_dir, seed_override, preloaded);

    const auto& cfg = art.config;
    const auto irfs = structural::impulse_responses(art.result.draws, cfg.horizon);
    const auto irf_bands = structural::posterior_bands(irfs, cfg.band_levels);
    const auto cum_bands = structural::posterior_bands(structural::cumulative(irfs),
                                                       cfg.band_levels);
    const auto fevd_bands = structural::posterior_bands(
        structural::fevd(art.result.draws, cfg.horizon), {0.5});
    structural::write_structural(out_dir / "structural", irf_bands, cum_bands,
                                 fevd_bands,
                                 bvar::effective_var_names(cfg.var),
                                 bvar::effective_shock_names(cfg.var));
    std::cerr << "pipeline: structural summaries at horizon " << cfg.horizon
              << " (" << irf_bands.draws_excluded
              << " explosive draws excluded)\n";
}

} // namespace disagvar::pipeline

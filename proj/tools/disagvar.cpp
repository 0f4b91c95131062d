// Command-line front end for the disagreement VAR toolkit.
//
// Subcommands map one-to-one onto the pipeline command layer:
//   index, simulate, estimate, irf, fevd, pipeline.
//
// Exit codes: 0 success, 2 configuration error (including bad usage),
// 3 data error, 4 numerical failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "disagvar/core/errors.hpp"
#include "disagvar/pipeline/commands.hpp"

namespace {

constexpr int exit_config = 2;
constexpr int exit_data = 3;
constexpr int exit_numeric = 4;

struct CommonArgs {
    std::string config;
    std::string out = "out";
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;

    std::optional<std::uint64_t> seed_override() const {
        if (seed_opt != nullptr && seed_opt->count() > 0) return seed;
        return std::nullopt;
    }
};

void add_config_out(CLI::App* cmd, CommonArgs& a, bool with_seed) {
    cmd->add_option("--config", a.config, "configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", a.out, "output directory")
        ->capture_default_str();
    if (with_seed)
        a.seed_opt = cmd->add_option("--seed", a.seed,
                                     "override the seed in the config file");
}

struct DrawsArgs {
    std::string draws;
    std::string out = "out";
    int horizon = 60;
    std::vector<double> levels;
};

void add_draws_args(CLI::App* cmd, DrawsArgs& a) {
    cmd->add_option("--draws", a.draws, "directory of stored posterior draws")
        ->required()
        ->check(CLI::ExistingDirectory);
    cmd->add_option("--out", a.out, "output directory")->capture_default_str();
    cmd->add_option("--horizon", a.horizon, "response horizon")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--levels", a.levels,
                    "quantile levels for the bands (in (0,1))");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Survey disagreement VAR toolkit"};
    app.set_version_flag("--version", "0.1.0");
    app.require_subcommand(1);

    CommonArgs index_args, simulate_args, estimate_args, pipeline_args;
    DrawsArgs irf_args, fevd_args;

    CLI::App* index_cmd = app.add_subcommand(
        "index", "build a disagreement index from categorical survey shares");
    add_config_out(index_cmd, index_args, false);

    CLI::App* simulate_cmd = app.add_subcommand(
        "simulate", "simulate the synthetic disagreement surface over a "
                    "volatility grid");
    add_config_out(simulate_cmd, simulate_args, true);

    CLI::App* estimate_cmd = app.add_subcommand(
        "estimate", "assemble the panel and sample the factor VAR posterior");
    add_config_out(estimate_cmd, estimate_args, true);

    CLI::App* irf_cmd = app.add_subcommand(
        "irf", "impulse-response bands from stored draws");
    add_draws_args(irf_cmd, irf_args);

    CLI::App* fevd_cmd = app.add_subcommand(
        "fevd", "forecast-error variance shares from stored draws");
    add_draws_args(fevd_cmd, fevd_args);

    CLI::App* pipeline_cmd = app.add_subcommand(
        "pipeline", "index, estimation, and structural summaries in one run");
    add_config_out(pipeline_cmd, pipeline_args, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    namespace pl = disagvar::pipeline;
    try {
        if (index_cmd->parsed())
            pl::run_index(index_args.config, index_args.out);
        else if (simulate_cmd->parsed())
            pl::run_simulate(simulate_args.config, simulate_args.out,
                             simulate_args.seed_override());
        else if (estimate_cmd->parsed())
            pl::run_estimate(estimate_args.config, estimate_args.out,
                             estimate_args.seed_override());
        else if (irf_cmd->parsed())
            pl::run_irf(irf_args.draws, irf_args.out, irf_args.horizon,
                        irf_args.levels.empty()
                            ? disagvar::structural::default_band_levels()
                            : irf_args.levels);
        else if (fevd_cmd->parsed())
            pl::run_fevd(fevd_args.draws, fevd_args.out, fevd_args.horizon,
                         fevd_args.levels.empty() ? std::vector<double>{0.5}
                                                  : fevd_args.levels);
        else if (pipeline_cmd->parsed())
            pl::run_pipeline(pipeline_args.config, pipeline_args.out,
                             pipeline_args.seed_override());
    } catch (const disagvar::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const disagvar::data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return exit_data;
    } catch (const disagvar::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

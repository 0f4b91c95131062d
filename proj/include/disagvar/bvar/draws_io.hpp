#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "disagvar/bvar/config.hpp"
#include "disagvar/bvar/sampler.hpp"
#include "disagvar/core/csv.hpp"

namespace disagvar::bvar {

inline std::vector<std::string> effective_var_names(const VarConfig& c) {
    if (!c.var_names.empty()) return c.var_names;
    std::vector<std::string> out;
    for (int i = 1; i <= c.n_vars; ++i) out.push_back("var" + std::to_string(i));
    return out;
}

inline std::vector<std::string> effective_shock_names(const VarConfig& c) {
    if (!c.shock_names.empty()) return c.shock_names;
    std::vector<std::string> out;
    for (int j = 1; j <= c.n_factors; ++j)
        out.push_back("shock" + std::to_string(j));
    return out;
}

inline std::vector<std::string> regressor_names(const VarConfig& c) {
    const auto vars = effective_var_names(c);
    std::vector<std::string> out{"const"};
    for (int lag = 1; lag <= c.n_lags; ++lag)
        for (const auto& v : vars) out.push_back(v + ".l" + std::to_string(lag));
    return out;
}

namespace detail {

template <typename Value>
void write_group(const std::filesystem::path& path,
                 const std::vector<std::string>& columns, size_t n_draws,
                 Value&& value) {
    std::vector<std::string> header{"draw"};
    header.insert(header.end(), columns.begin(), columns.end());
    CsvWriter w(header);
    std::vector<std::string> row(columns.size() + 1);
    for (size_t d = 0; d < n_draws; ++d) {
        row[0] = std::to_string(d + 1);
        for (size_t c = 0; c < columns.size(); ++c)
            row[c + 1] = format_double(value(d, c));
        w.row(row);
    }
    w.save(path.string());
}

} // namespace detail

// One draw-major CSV per parameter group plus a manifest with the seed,
// chain settings, ESS table and wall time.
inline void write_draws(const std::filesystem::path& dir, const McmcResult& res,
                        const VarConfig& c) {
    const PosteriorDraws& p = res.draws;
    std::filesystem::create_directories(dir);
    const auto vars = effective_var_names(c);
    const auto shocks = effective_shock_names(c);
    const auto regs = regressor_names(c);
    const int k = c.n_vars * c.n_lags + 1;
    const int r = c.n_factors;
    const size_t m = p.size();

    std::vector<std::string> phi_cols, lambda_cols, scale_cols, factor_cols;
    for (const auto& v : vars)
        for (const auto& reg : regs) phi_cols.push_back("phi." + v + "." + reg);
    for (const auto& v : vars)
        for (const auto& sh : shocks) lambda_cols.push_back("lambda." + v + "." + sh);
    for (const auto& v : vars)
        for (const auto& reg : regs)
            scale_cols.push_back("local." + v + "." + reg);
    for (const auto& sh : shocks)
        for (long t = 1; t <= p.t_obs; ++t)
            factor_cols.push_back("f." + sh + ".t" + std::to_string(t));

    detail::write_group(dir / "phi.csv", phi_cols, m, [&](size_t d, size_t cix) {
        return p.phi[d](long(cix) / k, long(cix) % k);
    });
    detail::write_group(dir / "lambda.csv", lambda_cols, m,
                        [&](size_t d, size_t cix) {
                            return p.lambda[d](long(cix) / r, long(cix) % r);
                        });
    detail::write_group(dir / "sigma2.csv", vars, m, [&](size_t d, size_t cix) {
        return p.sigma2[d](long(cix));
    });
    detail::write_group(dir / "factors.csv", factor_cols, m,
                        [&](size_t d, size_t cix) {
                            return p.factors[d](long(cix) % p.t_obs,
                                                long(cix) / p.t_obs);
                        });
    detail::write_group(dir / "shrinkage_local.csv", scale_cols, m,
                        [&](size_t d, size_t cix) {
                            return p.local_scale[d](long(cix) / k, long(cix) % k);
                        });
    detail::write_group(dir / "shrinkage_global.csv", vars, m,
                        [&](size_t d, size_t cix) {
                            return p.global_scale[d](long(cix));
                        });

    nlohmann::json man;
    man["seed"] = c.mcmc.seed;
    man["draws"] = c.mcmc.draws;
    man["burn_in"] = c.mcmc.burn_in;
    man["thin"] = c.mcmc.thin;
    man["retained"] = res.diagnostics.retained;
    man["n_vars"] = c.n_vars;
    man["n_lags"] = c.n_lags;
    man["n_factors"] = c.n_factors;
    man["t_obs"] = p.t_obs;
    man["var_names"] = vars;
    man["shock_names"] = shocks;
    man["prior"] = {{"loading_var", c.prior.loading_var},
                    {"sigma_shape", c.prior.sigma_shape},
                    {"sigma_rate", c.prior.sigma_rate}};
    nlohmann::json pattern = nlohmann::json::array();
    for (int i = 0; i < c.n_vars; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < r; ++j) row.push_back(to_string(c.pattern.at(i, j)));
        pattern.push_back(row);
    }
    man["sign_pattern"] = pattern;
    nlohmann::json ess;
    for (const auto& [name, ge] : res.diagnostics.ess)
        ess[name] = {{"min", ge.min_ess},
                     {"median", ge.median_ess},
                     {"chains", ge.chains}};
    man["ess"] = ess;
    man["wall_time_seconds"] = res.diagnostics.wall_seconds;
    write_file_atomic((dir / "manifest.json").string(), man.dump(2) + "\n");
}

// Draws read back from an estimation output directory, with the names needed
// to label downstream summaries.
struct StoredDraws {
    PosteriorDraws draws;
    std::vector<std::string> var_names;
    std::vector<std::string> shock_names;
};

// Reads the coefficient, loading, and variance draws written by write_draws.
// Factor paths and shrinkage scales are not loaded; structural summaries do
// not use them.
inline StoredDraws read_draws(const std::filesystem::path& dir) {
    const std::filesystem::path mpath = dir / "manifest.json";
    std::ifstream in(mpath);
    if (!in) throw data_error("cannot open manifest: " + mpath.string());
    nlohmann::json man;
    try {
        in >> man;
    } catch (const nlohmann::json::exception& e) {
        throw data_error("malformed manifest " + mpath.string() + ": " + e.what());
    }
    StoredDraws out;
    try {
        out.draws.n_vars = man.at("n_vars").get<int>();
        out.draws.n_lags = man.at("n_lags").get<int>();
        out.draws.n_factors = man.at("n_factors").get<int>();
        out.draws.t_obs = man.at("t_obs").get<long>();
        out.var_names = man.at("var_names").get<std::vector<std::string>>();
        out.shock_names = man.at("shock_names").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw data_error("manifest " + mpath.string() +
                         " is missing run fields: " + e.what());
    }
    const int n = out.draws.n_vars;
    const int k = n * out.draws.n_lags + 1;
    const int r = out.draws.n_factors;

    auto read_group = [&](const char* file, int rows, int cols, auto&& store) {
        const std::filesystem::path path = dir / file;
        CsvTable t = read_csv(path);
        const std::string where = path.string();
        if (static_cast<int>(t.header.size()) != 1 + rows * cols)
            throw data_error(where + ": expected " +
                             std::to_string(1 + rows * cols) + " columns, found " +
                             std::to_string(t.header.size()));
        for (const auto& row : t.rows) {
            Eigen::MatrixXd m(rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j)
                    m(i, j) = parse_double(row[1 + i * cols + j], where);
            store(std::move(m));
        }
    };
    read_group("phi.csv", n, k,
               [&](Eigen::MatrixXd m) { out.draws.phi.push_back(std::move(m)); });
    read_group("lambda.csv", n, r,
               [&](Eigen::MatrixXd m) { out.draws.lambda.push_back(std::move(m)); });
    read_group("sigma2.csv", 1, n, [&](Eigen::MatrixXd m) {
        out.draws.sigma2.push_back(m.row(0).transpose());
    });
    if (out.draws.phi.empty())
        throw data_error(dir.string() + ": no retained draws stored");
    if (out.draws.lambda.size() != out.draws.phi.size() ||
        out.draws.sigma2.size() != out.draws.phi.size())
        throw data_error(dir.string() +
                         ": parameter groups disagree on the number of draws");
    return out;
}

} // namespace disagvar::bvar

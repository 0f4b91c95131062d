#pragma once

// Maps parsed config documents onto typed run descriptions: the survey index
// recipe, the synthetic-surface calibration, and the estimation run (panel
// recipe, model shape, sign restrictions, chain settings, output options).

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "disagvar/bvar/config.hpp"
#include "disagvar/core/errors.hpp"
#include "disagvar/core/period.hpp"
#include "disagvar/pipeline/config_file.hpp"
#include "disagvar/pipeline/dataset.hpp"
#include "disagvar/survey/series.hpp"

namespace disagvar::pipeline {

// Name of the environment variable holding the fallback data directory, used
// only when a config omits [data].directory.
inline const char* data_dir_env = "DISAGVAR_DATA";

// [data].directory if present (relative paths resolve against the config
// file's directory), else $DISAGVAR_DATA, else the config directory itself.
inline std::filesystem::path resolve_data_dir(const ConfigDoc& doc,
                                              const std::filesystem::path& config_dir) {
    if (doc.find("data", "directory")) {
        const std::filesystem::path p = get_string(doc, "data", "directory");
        return p.is_absolute() ? p : config_dir / p;
    }
    if (const char* env = std::getenv(data_dir_env); env && *env)
        return std::filesystem::path(env);
    return config_dir;
}

struct IndexConfig {
    survey::IndexMethod method = survey::IndexMethod::tail;
    std::string mnemonic = "disagreement";
    std::vector<std::pair<std::string, std::string>> questions; // id, file
};

inline survey::IndexMethod parse_index_method(const std::string& text,
                                              const std::string& where) {
    if (text == "tail") return survey::IndexMethod::tail;
    if (text == "entropy") return survey::IndexMethod::entropy;
    if (text == "lacy") return survey::IndexMethod::lacy;
    throw config_error(where + ": unknown index method '" + text +
                       "' (expected tail, entropy, or lacy)");
}

inline IndexConfig parse_index_config(const ConfigDoc& doc) {
    IndexConfig c;
    c.method = parse_index_method(get_string_or(doc, "index", "method", "tail"),
                                  doc.where);
    c.mnemonic = get_string_or(doc, "index", "mnemonic", "disagreement");
    for (const ConfigValue& item : get_array(doc, "index", "questions")) {
        if (item.kind != ConfigValue::Kind::array || item.items.size() != 2 ||
            item.items[0].kind != ConfigValue::Kind::string ||
            item.items[1].kind != ConfigValue::Kind::string)
            throw config_error(doc.where +
                               ": [index].questions entries must be "
                               "[\"id\", \"file\"] pairs");
        c.questions.emplace_back(item.items[0].text, item.items[1].text);
    }
    if (c.questions.empty())
        throw config_error(doc.where + ": [index].questions is empty");
    return c;
}

struct SurfaceConfig {
    double beta = 0.0;
    int ma_order = 0;
    int horizon = 0;
    int agents = 0;
    int replications = 0;
    std::uint64_t seed = 0;
    std::vector<double> grid_eps2;
    std::vector<double> grid_v2;
};

inline SurfaceConfig parse_surface_config(const ConfigDoc& doc) {
    SurfaceConfig c;
    c.beta = get_real(doc, "surface", "beta");
    c.ma_order = static_cast<int>(get_int(doc, "surface", "ma_order"));
    c.horizon = static_cast<int>(get_int(doc, "surface", "horizon"));
    c.agents = static_cast<int>(get_int(doc, "surface", "agents"));
    c.replications = static_cast<int>(get_int(doc, "surface", "replications"));
    c.seed = static_cast<std::uint64_t>(get_int_or(doc, "surface", "seed", 0));
    auto reals = [&](const char* key) {
        std::vector<double> out;
        for (const ConfigValue& v : get_array(doc, "surface", key)) {
            if (v.kind != ConfigValue::Kind::real &&
                v.kind != ConfigValue::Kind::integer)
                throw config_error(doc.where + ": [surface]." + key +
                                   " must hold numbers");
            out.push_back(v.real_value);
        }
        return out;
    };
    c.grid_eps2 = reals("grid_eps2");
    c.grid_v2 = reals("grid_v2");
    return c;
}

struct EstimateConfig {
    std::filesystem::path data_dir;
    std::optional<Period> sample_start;
    std::optional<Period> sample_end;
    std::vector<SeriesSpec> series;
    bvar::VarConfig var;       // n_vars/pattern filled from series+restrictions
    int horizon = 60;
    std::vector<double> band_levels{0.16, 0.50, 0.84};
};

namespace detail {

inline SeriesSpec parse_series_spec(const ConfigValue& item,
                                    const std::string& where) {
    const auto bad = [&]() -> SeriesSpec {
        throw config_error(where +
                           ": [data].series entries must be [\"mnemonic\", "
                           "\"file\", tcode, \"frequency\", \"role\"]");
    };
    if (item.kind != ConfigValue::Kind::array || item.items.size() != 5)
        return bad();
    const auto& f = item.items;
    if (f[0].kind != ConfigValue::Kind::string ||
        f[1].kind != ConfigValue::Kind::string ||
        f[2].kind != ConfigValue::Kind::integer ||
        f[3].kind != ConfigValue::Kind::string ||
        f[4].kind != ConfigValue::Kind::string)
        return bad();
    SeriesSpec s;
    s.mnemonic = f[0].text;
    s.file = f[1].text;
    s.tcode = static_cast<int>(f[2].int_value);
    validate_tcode(s.tcode);
    s.frequency = parse_source_frequency(f[3].text);
    s.role = parse_series_role(f[4].text);
    return s;
}

} // namespace detail

inline EstimateConfig parse_estimate_config(const ConfigDoc& doc,
                                            const std::filesystem::path& config_dir) {
    EstimateConfig c;
    c.data_dir = resolve_data_dir(doc, config_dir);
    if (doc.find("data", "sample_start"))
        c.sample_start = parse_period(get_string(doc, "data", "sample_start"));
    if (doc.find("data", "sample_end"))
        c.sample_end = parse_period(get_string(doc, "data", "sample_end"));

    std::vector<std::string> names;
    for (const ConfigValue& item : get_array(doc, "data", "series")) {
        SeriesSpec s = detail::parse_series_spec(item, doc.where);
        for (const auto& prior : c.series)
            if (prior.mnemonic == s.mnemonic)
                throw config_error(doc.where + ": duplicate series mnemonic '" +
                                   s.mnemonic + "'");
        names.push_back(s.mnemonic);
        c.series.push_back(std::move(s));
    }
    if (c.series.empty())
        throw config_error(doc.where + ": [data].series is empty");

    bvar::VarConfig& v = c.var;
    v.n_vars = static_cast<int>(c.series.size());
    v.var_names = names;
    const bool monthly = c.series.front().frequency != SourceFrequency::quarterly;
    // monthly default 13 lags; quarterly default 4
    v.n_lags = static_cast<int>(get_int_or(doc, "model", "lags", monthly ? 13 : 4));
    v.n_factors = static_cast<int>(get_int(doc, "model", "factors"));

    if (doc.find("model", "shocks")) {
        for (const ConfigValue& s : get_array(doc, "model", "shocks")) {
            if (s.kind != ConfigValue::Kind::string)
                throw config_error(doc.where + ": [model].shocks must hold strings");
            v.shock_names.push_back(s.text);
        }
        if (static_cast<int>(v.shock_names.size()) != v.n_factors)
            throw config_error(doc.where + ": [model].shocks lists " +
                               std::to_string(v.shock_names.size()) +
                               " names for " + std::to_string(v.n_factors) +
                               " factors");
    }
    const std::vector<std::string> shock_names =
        v.shock_names.empty()
            ? [&] {
                  std::vector<std::string> d;
                  for (int j = 1; j <= v.n_factors; ++j)
                      d.push_back("shock" + std::to_string(j));
                  return d;
              }()
            : v.shock_names;

    v.pattern = bvar::SignPattern(v.n_vars, v.n_factors);
    for (const ConfigValue& item : get_array(doc, "model", "restrictions")) {
        if (item.kind != ConfigValue::Kind::array || item.items.size() != 3 ||
            item.items[0].kind != ConfigValue::Kind::string ||
            item.items[1].kind != ConfigValue::Kind::string ||
            item.items[2].kind != ConfigValue::Kind::string)
            throw config_error(doc.where +
                               ": [model].restrictions entries must be "
                               "[\"variable\", \"shock\", \"sign\"] triples");
        const std::string& var_name = item.items[0].text;
        const std::string& shock_name = item.items[1].text;
        const auto vi = std::find(names.begin(), names.end(), var_name);
        if (vi == names.end())
            throw config_error(doc.where + ": restriction names unknown variable '" +
                               var_name + "'");
        const auto si =
            std::find(shock_names.begin(), shock_names.end(), shock_name);
        if (si == shock_names.end())
            throw config_error(doc.where + ": restriction names unknown shock '" +
                               shock_name + "'");
        v.pattern.at(static_cast<int>(vi - names.begin()),
                     static_cast<int>(si - shock_names.begin())) =
            bvar::parse_sign(item.items[2].text);
    }

    v.mcmc.draws = get_int(doc, "mcmc", "draws");
    v.mcmc.burn_in = get_int(doc, "mcmc", "burn_in");
    v.mcmc.thin = get_int(doc, "mcmc", "thin");
    v.mcmc.seed = static_cast<std::uint64_t>(get_int_or(doc, "mcmc", "seed", 0));

    if (doc.has_table("prior")) {
        auto positive = [&](const char* key) {
            const double x = get_real(doc, "prior", key);
            if (!(x > 0.0))
                throw config_error(doc.where + ": [prior]." + key +
                                   " must be positive");
            return x;
        };
        if (doc.find("prior", "loading_var"))
            v.prior.loading_var = positive("loading_var");
        if (doc.find("prior", "sigma_shape"))
            v.prior.sigma_shape = positive("sigma_shape");
        if (doc.find("prior", "sigma_rate"))
            v.prior.sigma_rate = positive("sigma_rate");
    }

    c.horizon = static_cast<int>(get_int_or(doc, "output", "horizon", 60));
    if (c.horizon < 0)
        throw config_error(doc.where + ": [output].horizon must be nonnegative");
    if (doc.find("output", "band_levels")) {
        c.band_levels.clear();
        for (const ConfigValue& q : get_array(doc, "output", "band_levels")) {
            if (q.kind != ConfigValue::Kind::real &&
                q.kind != ConfigValue::Kind::integer)
                throw config_error(doc.where +
                                   ": [output].band_levels must hold numbers");
            c.band_levels.push_back(q.real_value);
        }
    }

    bvar::validate(v);
    return c;
}

} // namespace disagvar::pipeline

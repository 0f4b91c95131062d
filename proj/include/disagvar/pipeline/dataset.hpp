#pragma once

// Assembles the estimation panel: per-series ingestion, frequency collapse,
// stationarity transform, and alignment onto one common date grid. Series
// that force the sample window to shrink are logged; interior gaps and empty
// overlaps are hard errors that name the offending series.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "disagvar/core/csv.hpp"
#include "disagvar/core/errors.hpp"
#include "disagvar/core/period.hpp"
#include "disagvar/pipeline/transform.hpp"

namespace disagvar::pipeline {

enum class SourceFrequency { monthly, quarterly, daily };

inline SourceFrequency parse_source_frequency(const std::string& text) {
    if (text == "monthly") return SourceFrequency::monthly;
    if (text == "quarterly") return SourceFrequency::quarterly;
    if (text == "daily") return SourceFrequency::daily;
    throw config_error("unknown frequency '" + text +
                       "' (expected monthly, quarterly, or daily)");
}

inline const char* to_string(SourceFrequency f) {
    switch (f) {
        case SourceFrequency::monthly: return "monthly";
        case SourceFrequency::quarterly: return "quarterly";
        default: return "daily";
    }
}

enum class SeriesRole { uncertainty, disagreement, activity, price, financial, policy };

inline SeriesRole parse_series_role(const std::string& text) {
    if (text == "uncertainty") return SeriesRole::uncertainty;
    if (text == "disagreement") return SeriesRole::disagreement;
    if (text == "activity") return SeriesRole::activity;
    if (text == "price") return SeriesRole::price;
    if (text == "financial") return SeriesRole::financial;
    if (text == "policy") return SeriesRole::policy;
    throw config_error("unknown series role '" + text + "'");
}

inline const char* to_string(SeriesRole r) {
    switch (r) {
        case SeriesRole::uncertainty: return "uncertainty";
        case SeriesRole::disagreement: return "disagreement";
        case SeriesRole::activity: return "activity";
        case SeriesRole::price: return "price";
        case SeriesRole::financial: return "financial";
        default: return "policy";
    }
}

// Recipe for one panel column. `file` is resolved against the data
// directory; the marker "@index" pulls the series computed by the index step
// instead of reading a file.
struct SeriesSpec {
    std::string mnemonic;
    std::string file;
    int tcode = 1;
    SourceFrequency frequency = SourceFrequency::monthly;
    SeriesRole role = SeriesRole::activity;
};

struct Dataset {
    std::vector<Period> dates;
    Eigen::MatrixXd values; // T x n, column order follows specs
    std::vector<SeriesSpec> specs;
    std::vector<std::string> warnings;

    long t_obs() const { return static_cast<long>(dates.size()); }
    int n_vars() const { return static_cast<int>(specs.size()); }
};

namespace detail {

inline void require_contiguous(const ValueSeries& s) {
    for (size_t i = 1; i < s.dates.size(); ++i)
        if (s.dates[i - 1].next() != s.dates[i])
            throw data_error("series " + s.mnemonic + ": missing period " +
                             s.dates[i - 1].next().str() +
                             " (interior gaps cannot be aligned)");
}

} // namespace detail

// Loads, transforms, and aligns every series in `specs`. `preloaded` carries
// series produced upstream in the same run (keyed by mnemonic, used by specs
// whose file is "@index"). The optional window further restricts the common
// sample; trimming relative to the request is logged, an empty intersection
// is an error naming the binding series.
inline Dataset assemble_dataset(
    const std::vector<SeriesSpec>& specs, const std::filesystem::path& data_dir,
    std::optional<Period> window_start = std::nullopt,
    std::optional<Period> window_end = std::nullopt,
    const std::map<std::string, ValueSeries>& preloaded = {}) {
    if (specs.empty()) throw config_error("no series configured");

    Dataset out;
    out.specs = specs;
    std::vector<ValueSeries> transformed;
    for (const auto& spec : specs) {
        validate_tcode(spec.tcode);
        ValueSeries raw;
        if (spec.file == "@index") {
            auto it = preloaded.find(spec.mnemonic);
            if (it == preloaded.end())
                throw config_error("series " + spec.mnemonic +
                                   " expects the index step's output, but no "
                                   "index was computed in this run");
            raw = it->second;
            raw.mnemonic = spec.mnemonic;
        } else if (spec.frequency == SourceFrequency::daily) {
            raw = monthly_from_daily(
                read_daily_csv(data_dir / spec.file, spec.mnemonic));
        } else {
            raw = read_value_csv(data_dir / spec.file, spec.mnemonic);
            const Frequency want = spec.frequency == SourceFrequency::monthly
                                       ? Frequency::monthly
                                       : Frequency::quarterly;
            if (raw.dates.front().freq != want)
                throw data_error("series " + spec.mnemonic + ": file dates are " +
                                 std::string(to_string(raw.dates.front().freq)) +
                                 " but the spec declares " +
                                 to_string(spec.frequency));
        }
        detail::require_contiguous(raw);
        transformed.push_back(apply_tcode(raw, spec.tcode));
    }

    const Frequency freq = transformed.front().dates.front().freq;
    for (const auto& s : transformed)
        if (s.dates.front().freq != freq)
            throw data_error("series " + s.mnemonic +
                             ": frequency differs from the first series; the "
                             "panel needs one common frequency");

    Period start = transformed.front().dates.front();
    Period end = transformed.front().dates.back();
    Period earliest = start;
    Period latest = end;
    std::string start_binder = transformed.front().mnemonic;
    std::string end_binder = transformed.front().mnemonic;
    for (const auto& s : transformed) {
        if (s.dates.front() > start) {
            start = s.dates.front();
            start_binder = s.mnemonic;
        }
        if (s.dates.back() < end) {
            end = s.dates.back();
            end_binder = s.mnemonic;
        }
        if (s.dates.front() < earliest) earliest = s.dates.front();
        if (s.dates.back() > latest) latest = s.dates.back();
    }
    bool start_window_binds = false;
    bool end_window_binds = false;
    if (window_start) {
        if (window_start->freq != freq)
            throw config_error("sample_start frequency does not match the panel");
        if (*window_start > start) {
            start = *window_start;
            start_window_binds = true;
        } else if (*window_start < start) {
            out.warnings.push_back("sample_start " + window_start->str() +
                                   " trimmed to " + start.str() + "; series " +
                                   start_binder + " starts later");
        }
    }
    if (window_end) {
        if (window_end->freq != freq)
            throw config_error("sample_end frequency does not match the panel");
        if (*window_end < end) {
            end = *window_end;
            end_window_binds = true;
        } else if (*window_end > end) {
            out.warnings.push_back("sample_end " + window_end->str() +
                                   " trimmed to " + end.str() + "; series " +
                                   end_binder + " ends earlier");
        }
    }
    if (!start_window_binds && earliest < start)
        out.warnings.push_back("sample start trimmed to " + start.str() +
                               ": series " + start_binder +
                               " starts latest (data available from " +
                               earliest.str() + ")");
    if (!end_window_binds && latest > end)
        out.warnings.push_back("sample end trimmed to " + end.str() +
                               ": series " + end_binder +
                               " ends earliest (data available to " +
                               latest.str() + ")");
    if (start > end)
        throw data_error("empty common sample: " + start_binder +
                         " begins " + start.str() + " but " + end_binder +
                         " ends " + end.str());

    for (Period p = start; !(p > end); p = p.next()) out.dates.push_back(p);
    out.values.resize(out.t_obs(), out.n_vars());
    for (size_t j = 0; j < transformed.size(); ++j) {
        const auto& s = transformed[j];
        const long offset = start.serial() - s.dates.front().serial();
        for (long t = 0; t < out.t_obs(); ++t)
            out.values(t, static_cast<int>(j)) =
                s.values[static_cast<size_t>(offset + t)];
    }
    return out;
}

// Panel CSV with one date column and one column per series, full precision.
inline void write_dataset(const std::filesystem::path& path, const Dataset& d) {
    std::vector<std::string> header{"date"};
    for (const auto& spec : d.specs) header.push_back(spec.mnemonic);
    CsvWriter w(header);
    for (long t = 0; t < d.t_obs(); ++t) {
        std::vector<std::string> row{d.dates[t].str()};
        for (int j = 0; j < d.n_vars(); ++j)
            row.push_back(format_double(d.values(t, j)));
        w.row(row);
    }
    w.save(path.string());
}

} // namespace disagvar::pipeline

#pragma once

// Stationarity transforms and frequency collapsing for raw input series.
// Observations arrive as (date, value) CSV files at monthly, quarterly, or
// daily frequency; daily sources are averaged into calendar months before
// any transform is applied.

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "disagvar/core/csv.hpp"
#include "disagvar/core/errors.hpp"
#include "disagvar/core/period.hpp"

namespace disagvar::pipeline {

// One observed series on a regular calendar grid.
struct ValueSeries {
    std::string mnemonic;
    std::vector<Period> dates;
    std::vector<double> values;

    size_t size() const { return dates.size(); }
};

// One series of daily observations, not yet on a regular grid.
struct DailySeries {
    std::string mnemonic;
    std::vector<DayDate> dates;
    std::vector<double> values;
};

inline ValueSeries read_value_csv(const std::filesystem::path& path,
                                  const std::string& mnemonic) {
    CsvTable t = read_csv(path);
    const std::string where = path.string();
    const int cd = t.column("date", where);
    const int cv = t.column("value", where);
    ValueSeries s;
    s.mnemonic = mnemonic;
    for (const auto& row : t.rows) {
        s.dates.push_back(parse_period(row[cd]));
        s.values.push_back(parse_double(row[cv], where));
    }
    if (s.dates.empty()) throw data_error("series " + mnemonic + ": no rows in " + where);
    for (size_t i = 1; i < s.dates.size(); ++i) {
        if (s.dates[i].freq != s.dates[0].freq)
            throw data_error("series " + mnemonic + ": mixed frequencies in " + where);
        if (!(s.dates[i - 1] < s.dates[i]))
            throw data_error("series " + mnemonic + ": dates not strictly increasing at " +
                             s.dates[i].str());
    }
    return s;
}

inline DailySeries read_daily_csv(const std::filesystem::path& path,
                                  const std::string& mnemonic) {
    CsvTable t = read_csv(path);
    const std::string where = path.string();
    const int cd = t.column("date", where);
    const int cv = t.column("value", where);
    DailySeries s;
    s.mnemonic = mnemonic;
    for (const auto& row : t.rows) {
        s.dates.push_back(parse_day(row[cd]));
        s.values.push_back(parse_double(row[cv], where));
    }
    if (s.dates.empty()) throw data_error("series " + mnemonic + ": no rows in " + where);
    for (size_t i = 1; i < s.dates.size(); ++i)
        if (!(s.dates[i - 1] < s.dates[i]))
            throw data_error("series " + mnemonic + ": dates not strictly increasing at " +
                             s.dates[i].str());
    return s;
}

// Arithmetic mean over each calendar month. Months inside the covered span
// with no observations are gaps, not zeros, and are rejected.
inline ValueSeries monthly_from_daily(const DailySeries& s) {
    if (s.dates.empty())
        throw data_error("series " + s.mnemonic + ": no daily observations");
    ValueSeries out;
    out.mnemonic = s.mnemonic;
    Period current = s.dates.front().month_period();
    double sum = 0.0;
    long count = 0;
    auto flush = [&]() {
        out.dates.push_back(current);
        out.values.push_back(sum / static_cast<double>(count));
    };
    for (size_t i = 0; i < s.dates.size(); ++i) {
        const Period month = s.dates[i].month_period();
        if (month != current) {
            flush();
            if (current.next() != month)
                throw data_error("series " + s.mnemonic + ": no observations in " +
                                 current.next().str());
            current = month;
            sum = 0.0;
            count = 0;
        }
        sum += s.values[i];
        ++count;
    }
    flush();
    return out;
}

// Transform codes: 1 keeps levels, 5 takes the first difference of the
// natural log (dropping the first observation).
inline void validate_tcode(int tcode) {
    if (tcode != 1 && tcode != 5)
        throw config_error("unsupported transform code " + std::to_string(tcode) +
                           " (supported: 1 = levels, 5 = log first difference)");
}

inline ValueSeries apply_tcode(const ValueSeries& s, int tcode) {
    validate_tcode(tcode);
    if (tcode == 1) return s;
    if (s.size() < 2)
        throw data_error("series " + s.mnemonic +
                         ": log differencing needs at least 2 observations");
    ValueSeries out;
    out.mnemonic = s.mnemonic;
    for (size_t i = 0; i < s.size(); ++i) {
        if (!(s.values[i] > 0.0))
            throw data_error("series " + s.mnemonic + ": value " +
                             format_double(s.values[i]) + " at " + s.dates[i].str() +
                             " is not strictly positive; log differencing undefined");
        if (i == 0) continue;
        out.dates.push_back(s.dates[i]);
        out.values.push_back(std::log(s.values[i]) - std::log(s.values[i - 1]));
    }
    return out;
}

} // namespace disagvar::pipeline

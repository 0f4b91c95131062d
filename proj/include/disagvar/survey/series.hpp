#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "disagvar/core/csv.hpp"
#include "disagvar/core/errors.hpp"
#include "disagvar/core/period.hpp"

namespace disagvar::survey {

// Shares of respondents picking the positive / middle / negative answer
// of one qualitative survey question, in percent per period.
struct CategoricalSeries {
    std::string question_id;
    std::vector<Period> dates;
    std::vector<double> positive;
    std::vector<double> middle;
    std::vector<double> negative;

    size_t size() const { return dates.size(); }
};

enum class IndexMethod { tail, entropy, lacy, pca };

inline const char* to_string(IndexMethod m) {
    switch (m) {
        case IndexMethod::tail: return "tail";
        case IndexMethod::entropy: return "entropy";
        case IndexMethod::lacy: return "lacy";
        case IndexMethod::pca: return "pca";
    }
    return "?";
}

// A per-period disagreement measure derived from one or more questions.
struct DisagreementIndex {
    std::vector<Period> dates;
    std::vector<double> values;
    IndexMethod method = IndexMethod::tail;
    bool standardized = false;
    // Populated by the cross-question aggregate only.
    std::vector<std::string> source_questions;
    std::vector<double> loadings;
    double explained_variance_share = 0.0;
};

// Shares must each lie in [0,100] and sum to 100 within rounding slack.
// A period with all three shares at zero is flagged as degenerate rather
// than merely out of tolerance.
inline void validate(const CategoricalSeries& s) {
    const size_t n = s.size();
    if (s.positive.size() != n || s.middle.size() != n || s.negative.size() != n)
        throw data_error("question " + s.question_id + ": column lengths differ");
    if (n == 0) throw data_error("question " + s.question_id + ": no observations");
    for (size_t t = 0; t < n; ++t) {
        auto check = [&](double v, const char* field) {
            if (!std::isfinite(v) || v < 0.0 || v > 100.0)
                throw data_error("question " + s.question_id + ", period " +
                                 s.dates[t].str() + ": share '" + field +
                                 "' outside [0,100]");
        };
        check(s.positive[t], "positive");
        check(s.middle[t], "middle");
        check(s.negative[t], "negative");
        const double sum = s.positive[t] + s.middle[t] + s.negative[t];
        if (sum == 0.0)
            throw data_error("question " + s.question_id + ", period " +
                             s.dates[t].str() + ": degenerate period, all shares zero");
        if (sum < 99.0 || sum > 101.0)
            throw data_error("question " + s.question_id + ", period " +
                             s.dates[t].str() + ": shares sum to " +
                             format_double(sum) + ", outside [99,101]");
    }
    for (size_t t = 1; t < n; ++t) {
        if (s.dates[t].freq != s.dates[0].freq)
            throw data_error("question " + s.question_id + ": mixed frequencies");
        if (!(s.dates[t - 1] < s.dates[t]))
            throw data_error("question " + s.question_id + ": dates not strictly increasing at " +
                             s.dates[t].str());
    }
}

// Reads a question file with header date,positive,middle,negative.
inline CategoricalSeries read_categorical_csv(const std::filesystem::path& path,
                                              const std::string& question_id) {
    CsvTable t = read_csv(path);
    const std::string where = path.string();
    const int cd = t.column("date", where);
    const int cp = t.column("positive", where);
    const int cm = t.column("middle", where);
    const int cn = t.column("negative", where);
    CategoricalSeries s;
    s.question_id = question_id;
    s.dates.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        s.dates.push_back(parse_period(row[cd]));
        s.positive.push_back(parse_double(row[cp], where));
        s.middle.push_back(parse_double(row[cm], where));
        s.negative.push_back(parse_double(row[cn], where));
    }
    validate(s);
    return s;
}

} // namespace disagvar::survey

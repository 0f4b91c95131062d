#pragma once

#include <array>
#include <cmath>

#include "disagvar/core/stats.hpp"
#include "disagvar/survey/series.hpp"

namespace disagvar::survey {

// 1 - |positive - negative|/100. Equals 1 when the tails balance and 0 when
// everyone sits in one tail; invariant to swapping the two tails.
inline DisagreementIndex tail_disagreement(const CategoricalSeries& s) {
    validate(s);
    DisagreementIndex ix;
    ix.method = IndexMethod::tail;
    ix.dates = s.dates;
    ix.values.reserve(s.size());
    for (size_t t = 0; t < s.size(); ++t)
        ix.values.push_back(1.0 - std::fabs(s.positive[t] - s.negative[t]) / 100.0);
    return ix;
}

// Shannon entropy of the renormalized three-way split, natural log, with
// the 0 * log 0 = 0 convention. Maximum ln 3 at the uniform split.
inline DisagreementIndex entropy_disagreement(const CategoricalSeries& s) {
    validate(s);
    DisagreementIndex ix;
    ix.method = IndexMethod::entropy;
    ix.dates = s.dates;
    ix.values.reserve(s.size());
    for (size_t t = 0; t < s.size(); ++t) {
        const double sum = s.positive[t] + s.middle[t] + s.negative[t];
        double h = 0.0;
        for (double share : {s.positive[t], s.middle[t], s.negative[t]}) {
            const double p = share / sum;
            if (p > 0.0) h -= p * std::log(p);
        }
        ix.values.push_back(h);
    }
    return ix;
}

enum class Category { negative, middle, positive };

using CategoryOrder = std::array<Category, 3>;

inline constexpr CategoryOrder default_category_order{
    Category::negative, Category::middle, Category::positive};

// Ordered dispersion over cumulative relative frequencies: sum of
// F_i (1 - F_i) over the two interior cut points. The caller chooses the
// ordinal ordering of the categories (default negative < middle < positive);
// the value is invariant to reversing it. Range [0, 0.5] for 3 categories.
inline DisagreementIndex lacy_disagreement(
    const CategoricalSeries& s, const CategoryOrder& order = default_category_order) {
    validate(s);
    {
        int seen[3] = {0, 0, 0};
        for (Category c : order) seen[static_cast<int>(c)]++;
        if (seen[0] != 1 || seen[1] != 1 || seen[2] != 1)
            throw data_error("category order must be a permutation of the 3 categories");
    }
    DisagreementIndex ix;
    ix.method = IndexMethod::lacy;
    ix.dates = s.dates;
    ix.values.reserve(s.size());
    for (size_t t = 0; t < s.size(); ++t) {
        auto share = [&](Category c) {
            switch (c) {
                case Category::negative: return s.negative[t];
                case Category::middle: return s.middle[t];
                default: return s.positive[t];
            }
        };
        const double sum = s.positive[t] + s.middle[t] + s.negative[t];
        const double f1 = share(order[0]) / sum;
        const double f2 = f1 + share(order[1]) / sum;
        ix.values.push_back(f1 * (1.0 - f1) + f2 * (1.0 - f2));
    }
    return ix;
}

// Z-scores the index (sample standard deviation, n-1 denominator).
// Applying it twice changes nothing beyond rounding.
inline DisagreementIndex standardize(DisagreementIndex ix) {
    const size_t n = ix.values.size();
    if (n < 2)
        throw data_error("cannot standardize an index with fewer than 2 observations");
    const double m = stats::mean(ix.values);
    const double sd = stats::stddev(ix.values);
    if (!(sd > 0.0))
        throw data_error("cannot standardize a constant index (zero variance)");
    for (double& v : ix.values) v = (v - m) / sd;
    ix.standardized = true;
    return ix;
}

} // namespace disagvar::survey

#pragma once

#include <charconv>
#include <compare>
#include <cstdio>
#include <string>
#include <string_view>

#include "disagvar/core/errors.hpp"

namespace disagvar {

enum class Frequency { monthly, quarterly };

inline const char* to_string(Frequency f) {
    return f == Frequency::monthly ? "monthly" : "quarterly";
}

// Calendar period at monthly or quarterly frequency.
// Text forms: "YYYY-MM" (month 01..12) and "YYYY-Qq" (quarter 1..4).
struct Period {
    int year = 0;
    int sub = 1; // 1..12 for monthly, 1..4 for quarterly
    Frequency freq = Frequency::monthly;

    friend auto operator<=>(const Period&, const Period&) = default;

    int per_year() const { return freq == Frequency::monthly ? 12 : 4; }

    // Serial index, comparable only within one frequency.
    long serial() const { return static_cast<long>(year) * per_year() + (sub - 1); }

    Period next() const {
        Period p = *this;
        if (++p.sub > per_year()) {
            p.sub = 1;
            ++p.year;
        }
        return p;
    }

    std::string str() const {
        char buf[32];
        if (freq == Frequency::monthly)
            std::snprintf(buf, sizeof buf, "%04d-%02d", year, sub);
        else
            std::snprintf(buf, sizeof buf, "%04d-Q%d", year, sub);
        return buf;
    }
};

namespace detail {

inline bool parse_int(std::string_view s, int& out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

} // namespace detail

inline Period parse_period(std::string_view text) {
    auto fail = [&]() -> Period {
        throw data_error("unparseable period '" + std::string(text) +
                         "' (expected YYYY-MM or YYYY-Qq)");
    };
    if (text.size() < 6 || text[4] != '-') return fail();
    Period p;
    if (!detail::parse_int(text.substr(0, 4), p.year)) return fail();
    if (text[5] == 'Q' || text[5] == 'q') {
        p.freq = Frequency::quarterly;
        if (text.size() != 7 || !detail::parse_int(text.substr(6), p.sub) ||
            p.sub < 1 || p.sub > 4)
            return fail();
    } else {
        p.freq = Frequency::monthly;
        if (text.size() != 7 || !detail::parse_int(text.substr(5), p.sub) ||
            p.sub < 1 || p.sub > 12)
            return fail();
    }
    return p;
}

// Calendar day, used only when collapsing daily observations to months.
struct DayDate {
    int year = 0;
    int month = 1;
    int day = 1;

    friend auto operator<=>(const DayDate&, const DayDate&) = default;

    Period month_period() const { return {year, month, Frequency::monthly}; }

    std::string str() const {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
        return buf;
    }
};

inline DayDate parse_day(std::string_view text) {
    auto fail = [&]() -> DayDate {
        throw data_error("unparseable date '" + std::string(text) +
                         "' (expected YYYY-MM-DD)");
    };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return fail();
    DayDate d;
    if (!detail::parse_int(text.substr(0, 4), d.year) ||
        !detail::parse_int(text.substr(5, 2), d.month) ||
        !detail::parse_int(text.substr(8, 2), d.day))
        return fail();
    if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return fail();
    return d;
}

} // namespace disagvar

#pragma once

// Minimal line-oriented config dialect (a TOML subset): [table] headers,
// key = value entries, # comments, and values that are quoted strings,
// integers, reals, booleans, or (possibly nested, possibly multi-line)
// arrays. Deliberately small so a config diff reads like the file itself.

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "disagvar/core/errors.hpp"

namespace disagvar::pipeline {

struct ConfigValue {
    enum class Kind { string, integer, real, boolean, array };
    Kind kind = Kind::string;
    std::string text;               // string payload
    long long int_value = 0;        // integer payload
    double real_value = 0.0;        // real payload (also set for integers)
    bool bool_value = false;        // boolean payload
    std::vector<ConfigValue> items; // array payload
    int line = 0;

    const char* kind_name() const {
        switch (kind) {
            case Kind::string: return "string";
            case Kind::integer: return "integer";
            case Kind::real: return "real";
            case Kind::boolean: return "boolean";
            default: return "array";
        }
    }
};

struct ConfigDoc {
    std::string where; // file name for error messages
    std::map<std::string, std::map<std::string, ConfigValue>> tables;

    bool has_table(const std::string& t) const { return tables.count(t) != 0; }

    const ConfigValue* find(const std::string& t, const std::string& k) const {
        auto ti = tables.find(t);
        if (ti == tables.end()) return nullptr;
        auto ki = ti->second.find(k);
        return ki == ti->second.end() ? nullptr : &ki->second;
    }

    const ConfigValue& require(const std::string& t, const std::string& k) const {
        const ConfigValue* v = find(t, k);
        if (!v)
            throw config_error(where + ": missing required key '" + k +
                               "' in table [" + t + "]");
        return *v;
    }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

// Strips a trailing comment, respecting quoted strings.
inline std::string_view strip_comment(std::string_view s) {
    bool in_string = false;
    for (size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
        } else if (c == '"') {
            in_string = true;
        } else if (c == '#') {
            return s.substr(0, i);
        }
    }
    return s;
}

// Bracket balance outside strings; used to join multi-line arrays.
inline int bracket_balance(std::string_view s, bool& in_string) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
        } else if (c == '"') {
            in_string = true;
        } else if (c == '[') {
            ++depth;
        } else if (c == ']') {
            --depth;
        }
    }
    return depth;
}

inline config_error value_error(const std::string& where, int line,
                                const std::string& what) {
    return config_error(where + ":" + std::to_string(line) + ": " + what);
}

inline ConfigValue parse_value(std::string_view raw, const std::string& where,
                               int line);

inline ConfigValue parse_array(std::string_view body, const std::string& where,
                               int line) {
    ConfigValue v;
    v.kind = ConfigValue::Kind::array;
    v.line = line;
    size_t start = 0;
    int depth = 0;
    bool in_string = false;
    bool saw_element = false;
    auto flush = [&](size_t end) {
        const std::string_view piece = trim(body.substr(start, end - start));
        if (piece.empty()) {
            if (saw_element) return; // trailing comma
            throw value_error(where, line, "empty array element");
        }
        v.items.push_back(parse_value(piece, where, line));
        saw_element = true;
    };
    for (size_t i = 0; i < body.size(); ++i) {
        const char c = body[i];
        if (in_string) {
            if (c == '\\') ++i;
            else if (c == '"') in_string = false;
        } else if (c == '"') {
            in_string = true;
        } else if (c == '[') {
            ++depth;
        } else if (c == ']') {
            --depth;
            if (depth < 0) throw value_error(where, line, "unbalanced ']'");
        } else if (c == ',' && depth == 0) {
            flush(i);
            start = i + 1;
            saw_element = false; // next slot must produce an element or be trailing
        }
    }
    if (in_string) throw value_error(where, line, "unterminated string in array");
    if (depth != 0) throw value_error(where, line, "unbalanced '[' in array");
    const std::string_view rest = trim(body.substr(start));
    if (!rest.empty()) v.items.push_back(parse_value(rest, where, line));
    return v;
}

inline ConfigValue parse_value(std::string_view raw, const std::string& where,
                               int line) {
    ConfigValue v;
    v.line = line;
    if (raw.empty()) throw value_error(where, line, "missing value");
    if (raw.front() == '"') {
        v.kind = ConfigValue::Kind::string;
        std::string out;
        size_t i = 1;
        for (; i < raw.size(); ++i) {
            const char c = raw[i];
            if (c == '\\') {
                if (i + 1 >= raw.size())
                    throw value_error(where, line, "dangling escape in string");
                const char e = raw[++i];
                if (e == '"' || e == '\\') out.push_back(e);
                else if (e == 'n') out.push_back('\n');
                else if (e == 't') out.push_back('\t');
                else throw value_error(where, line,
                                       std::string("unsupported escape '\\") + e + "'");
            } else if (c == '"') {
                break;
            } else {
                out.push_back(c);
            }
        }
        if (i >= raw.size() || raw[i] != '"')
            throw value_error(where, line, "unterminated string");
        if (!trim(raw.substr(i + 1)).empty())
            throw value_error(where, line, "trailing characters after string");
        v.text = std::move(out);
        return v;
    }
    if (raw.front() == '[') {
        if (raw.back() != ']')
            throw value_error(where, line, "array does not end with ']'");
        return parse_array(raw.substr(1, raw.size() - 2), where, line);
    }
    if (raw == "true" || raw == "false") {
        v.kind = ConfigValue::Kind::boolean;
        v.bool_value = raw == "true";
        return v;
    }
    // number: integer if it parses fully as one, real otherwise
    {
        long long ival = 0;
        auto [p, ec] =
            std::from_chars(raw.data(), raw.data() + raw.size(), ival);
        if (ec == std::errc{} && p == raw.data() + raw.size()) {
            v.kind = ConfigValue::Kind::integer;
            v.int_value = ival;
            v.real_value = static_cast<double>(ival);
            return v;
        }
    }
    {
        double dval = 0.0;
        auto [p, ec] =
            std::from_chars(raw.data(), raw.data() + raw.size(), dval);
        if (ec == std::errc{} && p == raw.data() + raw.size()) {
            v.kind = ConfigValue::Kind::real;
            v.real_value = dval;
            return v;
        }
    }
    throw value_error(where, line,
                      "cannot parse value '" + std::string(raw) +
                          "' (strings need quotes)");
}

inline bool valid_key(std::string_view k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            return false;
    return true;
}

} // namespace detail

inline ConfigDoc parse_config_text(const std::string& text,
                                   const std::string& where) {
    ConfigDoc doc;
    doc.where = where;
    std::istringstream in(text);
    std::string line;
    std::string current_table;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const int start_line = line_no;
        std::string_view sv = detail::trim(detail::strip_comment(line));
        if (sv.empty()) continue;
        if (sv.front() == '[') {
            if (sv.back() != ']' || sv.size() < 3)
                throw detail::value_error(where, start_line, "malformed table header");
            const std::string name(detail::trim(sv.substr(1, sv.size() - 2)));
            if (!detail::valid_key(name))
                throw detail::value_error(where, start_line,
                                          "invalid table name '" + name + "'");
            if (doc.tables.count(name))
                throw detail::value_error(where, start_line,
                                          "duplicate table [" + name + "]");
            doc.tables[name];
            current_table = name;
            continue;
        }
        const size_t eq = [&] {
            bool in_string = false;
            for (size_t i = 0; i < sv.size(); ++i) {
                const char c = sv[i];
                if (in_string) {
                    if (c == '\\') ++i;
                    else if (c == '"') in_string = false;
                } else if (c == '"') {
                    in_string = true;
                } else if (c == '=') {
                    return i;
                }
            }
            return sv.size();
        }();
        if (eq == sv.size())
            throw detail::value_error(where, start_line,
                                      "expected 'key = value' or '[table]'");
        const std::string key(detail::trim(sv.substr(0, eq)));
        if (!detail::valid_key(key))
            throw detail::value_error(where, start_line, "invalid key '" + key + "'");
        if (current_table.empty())
            throw detail::value_error(where, start_line,
                                      "key '" + key + "' appears before any [table]");
        std::string value_text(detail::trim(sv.substr(eq + 1)));
        // join continuation lines until brackets balance
        bool in_string = false;
        int depth = detail::bracket_balance(value_text, in_string);
        while (depth > 0 || in_string) {
            std::string more;
            if (!std::getline(in, more))
                throw detail::value_error(where, start_line,
                                          "unterminated array for key '" + key + "'");
            ++line_no;
            const std::string_view stripped = detail::strip_comment(more);
            value_text += ' ';
            value_text.append(stripped.begin(), stripped.end());
            depth += detail::bracket_balance(stripped, in_string);
            if (depth < 0)
                throw detail::value_error(where, start_line, "unbalanced ']'");
        }
        auto& table = doc.tables[current_table];
        if (table.count(key))
            throw detail::value_error(where, start_line,
                                      "duplicate key '" + key + "' in [" +
                                          current_table + "]");
        table.emplace(key, detail::parse_value(detail::trim(value_text), where,
                                               start_line));
    }
    return doc;
}

inline ConfigDoc read_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path.string());
}

// Typed accessors; every failure names file, table, and key.

inline std::string get_string(const ConfigDoc& doc, const std::string& t,
                              const std::string& k) {
    const ConfigValue& v = doc.require(t, k);
    if (v.kind != ConfigValue::Kind::string)
        throw config_error(doc.where + ": [" + t + "]." + k + " must be a string, got " +
                           v.kind_name());
    return v.text;
}

inline std::string get_string_or(const ConfigDoc& doc, const std::string& t,
                                 const std::string& k, const std::string& fallback) {
    return doc.find(t, k) ? get_string(doc, t, k) : fallback;
}

inline long long get_int(const ConfigDoc& doc, const std::string& t,
                         const std::string& k) {
    const ConfigValue& v = doc.require(t, k);
    if (v.kind != ConfigValue::Kind::integer)
        throw config_error(doc.where + ": [" + t + "]." + k +
                           " must be an integer, got " + v.kind_name());
    return v.int_value;
}

inline long long get_int_or(const ConfigDoc& doc, const std::string& t,
                            const std::string& k, long long fallback) {
    return doc.find(t, k) ? get_int(doc, t, k) : fallback;
}

inline double get_real(const ConfigDoc& doc, const std::string& t,
                       const std::string& k) {
    const ConfigValue& v = doc.require(t, k);
    if (v.kind != ConfigValue::Kind::real && v.kind != ConfigValue::Kind::integer)
        throw config_error(doc.where + ": [" + t + "]." + k +
                           " must be a number, got " + v.kind_name());
    return v.real_value;
}

inline double get_real_or(const ConfigDoc& doc, const std::string& t,
                          const std::string& k, double fallback) {
    return doc.find(t, k) ? get_real(doc, t, k) : fallback;
}

inline bool get_bool_or(const ConfigDoc& doc, const std::string& t,
                        const std::string& k, bool fallback) {
    const ConfigValue* v = doc.find(t, k);
    if (!v) return fallback;
    if (v->kind != ConfigValue::Kind::boolean)
        throw config_error(doc.where + ": [" + t + "]." + k +
                           " must be true or false, got " + v->kind_name());
    return v->bool_value;
}

inline const std::vector<ConfigValue>& get_array(const ConfigDoc& doc,
                                                 const std::string& t,
                                                 const std::string& k) {
    const ConfigValue& v = doc.require(t, k);
    if (v.kind != ConfigValue::Kind::array)
        throw config_error(doc.where + ": [" + t + "]." + k +
                           " must be an array, got " + v.kind_name());
    return v.items;
}

} // namespace disagvar::pipeline

#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "disagvar/core/errors.hpp"

namespace disagvar {

// Shortest round-trip decimal form of a double. Locale-independent,
// so repeated runs produce byte-identical files.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw numeric_error("failed to format double");
    return std::string(buf, ptr);
}

inline double parse_double(std::string_view s, const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw data_error(where + ": not a number: '" + std::string(s) + "'");
    return v;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(std::string_view name, const std::string& where) const {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        throw data_error(where + ": missing column '" + std::string(name) + "'");
    }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace detail

inline CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path.string());
    CsvTable t;
    std::string line;
    if (!std::getline(in, line))
        throw data_error("empty file: " + path.string());
    t.header = detail::split_csv_line(line);
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != t.header.size())
            throw data_error(path.string() + ":" + std::to_string(lineno) +
                             ": expected " + std::to_string(t.header.size()) +
                             " fields, got " + std::to_string(cells.size()));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

// Writes via a temp file in the destination directory, then renames,
// so a crash never leaves a truncated output behind.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw data_error("cannot write file: " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw data_error("short write to: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw data_error("cannot rename " + tmp.string() + " -> " +
                             path.string() + ": " + ec.message());
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) {
        for (size_t i = 0; i < header.size(); ++i) {
            if (i) body_ += ',';
            body_ += header[i];
        }
        body_ += '\n';
        ncols_ = header.size();
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != ncols_)
            throw numeric_error("csv row width mismatch");
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) body_ += ',';
            body_ += cells[i];
        }
        body_ += '\n';
    }

    const std::string& str() const { return body_; }

    void save(const std::filesystem::path& path) const {
        write_file_atomic(path, body_);
    }

private:
    std::string body_;
    size_t ncols_ = 0;
};

} // namespace disagvar

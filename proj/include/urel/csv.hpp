#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "urel/errors.hpp"

// Plain-text table I/O. Doubles are written with std::to_chars, the shortest
// representation that round-trips, so emitted files are byte-reproducible.

namespace urel::csv {

inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
    double out = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (res.ec != std::errc{})
        throw error("csv: cannot parse number '" + std::string(s) + "'");
    return out;
}

struct Table {
    std::string magic;                ///< first line when it starts with '#'
    std::vector<std::string> columns; ///< optional header names
    std::vector<std::vector<double>> rows;

    std::size_t column_index(const std::string& name) const {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name) return i;
        throw error("csv: no column named '" + name + "'");
    }
};

inline void write(std::ostream& os, const Table& t) {
    if (!t.magic.empty()) os << t.magic << '\n';
    if (!t.columns.empty()) {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "," : "") << t.columns[i];
        os << '\n';
    }
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_double(row[i]);
        os << '\n';
    }
}

inline void write_file(const std::string& path, const Table& t) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw error("csv: cannot open '" + path + "' for writing");
    write(os, t);
}

inline std::vector<std::string_view> split(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline Table read(std::istream& is) {
    Table t;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (t.magic.empty() && t.rows.empty()) t.magic = line;
            continue;
        }
        const auto fields = split(line);
        if (!header_seen) {
            header_seen = true;
            // treat a non-numeric first row as column names
            double probe;
            const auto ec =
                std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), probe).ec;
            if (ec != std::errc{}) {
                for (const auto& f : fields) t.columns.emplace_back(f);
                continue;
            }
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_double(f));
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline Table read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw error("csv: cannot open '" + path + "'");
    return read(is);
}

} // namespace urel::csv

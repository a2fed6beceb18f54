#pragma once

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <system_error>
#include <vector>

#include "qcs/errors.hpp"
#include "qcs/revival.hpp"

// CSV emission and parsing. Numbers go through std::to_chars / from_chars so
// the bytes are locale-independent and deterministic for a fixed input.

namespace qcs {

// Shortest-of-17-significant-digits decimal form, '.' separator, no locale.
inline std::string format_number(double value, int significant_digits = 17) {
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general,
                      significant_digits);
    return std::string(buf, res.ptr);
}

inline double parse_number(std::string_view text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw invalid_argument("not a number: '" + std::string(text) + "'");
    return value;
}

// Header line first, then one numeric row per line, '\n' endings.
inline void write_csv(const ScanResult& scan, std::ostream& out) {
    for (std::size_t k = 0; k < scan.column_names.size(); ++k)
        out << (k ? "," : "") << scan.column_names[k];
    out << '\n';
    for (const auto& row : scan.rows) {
        out << format_number(row.t);
        for (const double v : row.values) out << ',' << format_number(v);
        out << '\n';
    }
}

inline ScanResult read_csv(std::istream& in) {
    ScanResult scan;
    std::string line;
    if (!std::getline(in, line) || line.empty())
        throw invalid_argument("CSV input has no header line");
    std::size_t pos = 0;
    while (pos <= line.size()) {
        const auto comma = line.find(',', pos);
        const auto end = comma == std::string::npos ? line.size() : comma;
        scan.column_names.push_back(line.substr(pos, end - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }

    const std::size_t n_cols = scan.column_names.size();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> fields;
        fields.reserve(n_cols);
        pos = 0;
        while (pos <= line.size()) {
            const auto comma = line.find(',', pos);
            const auto end = comma == std::string::npos ? line.size() : comma;
            fields.push_back(parse_number(std::string_view(line).substr(pos, end - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (fields.size() != n_cols)
            throw invalid_argument("CSV row has " + std::to_string(fields.size()) +
                                   " fields, header has " + std::to_string(n_cols));
        ScanRow row;
        row.t = fields.front();
        row.values.assign(fields.begin() + 1, fields.end());
        scan.rows.push_back(std::move(row));
    }
    return scan;
}

} // namespace qcs

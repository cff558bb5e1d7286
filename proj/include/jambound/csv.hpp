// SPDX-License-Identifier: Apache-2.0
// Part of jambound: mutual-information limits for coarsely quantized
// MIMO receivers under jamming.

#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace jambound {

// One cell of an output table: a number or a short label. Labels are
// plain identifiers (policy names), never quoted, never containing
// separators.
using Cell = std::variant<double, std::string>;

// Rectangular result table with named columns.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns.size()) {
            throw std::invalid_argument("Table: row width disagrees with header");
        }
        rows.push_back(std::move(row));
    }
};

// Sorted per-curve samples of a Monte Carlo experiment.
struct CdfResult {
    std::string label;
    std::vector<double> sorted_values;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

// Locale-independent shortest-faithful formatting with 12 significant
// digits; integers print without a trailing ".0" (to_chars general
// format). The '.' decimal separator is guaranteed by construction.
inline std::string format_value(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

inline std::string cell_text(const Cell& c) {
    if (std::holds_alternative<double>(c)) return format_value(std::get<double>(c));
    return std::get<std::string>(c);
}

namespace detail {

inline std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace detail

// Table -> CSV. Deterministic row order is the caller's contract; this
// writer only serializes. LF line endings, UTF-8, 12 significant digits.
inline void render_csv(const Table& table, const std::string& path) {
    auto out = detail::open_out(path);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << cell_text(row[c]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

// CdfResult -> CSV with columns value,cdf where cdf = rank/trials.
// The leading "# seed=<n>" comment records the generator seed, since
// these files come from stochastic runs.
inline void render_csv(const CdfResult& cdf, const std::string& path) {
    auto out = detail::open_out(path);
    out << "# seed=" << cdf.seed << '\n';
    out << "value,cdf\n";
    const double n = double(cdf.sorted_values.size());
    for (std::size_t k = 0; k < cdf.sorted_values.size(); ++k) {
        out << format_value(cdf.sorted_values[k]) << ','
            << format_value(double(k + 1) / n) << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace jambound

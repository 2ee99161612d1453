#pragma once

// Comma-separated output with a unit-bearing header and 9 significant digits.

#include <cstdio>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "tbw/errors.hpp"

namespace tbw::io {

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

class CsvWriter {
public:
    using Cell = std::variant<double, long long, std::string>;

    CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path), cols_(header.size()) {
        if (!out_) throw Error("cannot write '" + path + "'");
        for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
        out_ << '\n';
    }

    void row(const std::vector<Cell>& cells) {
        if (cells.size() != cols_) throw Error("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                                               std::to_string(cols_));
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            if (const auto* d = std::get_if<double>(&cells[i])) out_ << format_number(*d);
            else if (const auto* n = std::get_if<long long>(&cells[i])) out_ << *n;
            else out_ << std::get<std::string>(cells[i]);
        }
        out_ << '\n';
    }

private:
    std::ofstream out_;
    std::size_t cols_;
};

}  // namespace tbw::io

#include "csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace heis::cli {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add(std::vector<Cell> row) {
    if (row.size() != header_.size()) throw std::invalid_argument("csv row width does not match the header");
    std::vector<std::string> r;
    for (auto& c : row) r.push_back(std::move(c.text));
    rows_.push_back(std::move(r));
}

std::string CsvTable::str() const {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << str();
    if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace heis::cli

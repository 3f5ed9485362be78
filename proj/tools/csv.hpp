#pragma once

#include <string>
#include <vector>

namespace heis::cli {

// %.17g: round-trips every double, identical bytes for identical values.
std::string format_number(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    struct Cell {
        Cell(double v) : text(format_number(v)) {}
        Cell(int v) : text(std::to_string(v)) {}
        Cell(unsigned v) : text(std::to_string(v)) {}
        Cell(long v) : text(std::to_string(v)) {}
        Cell(unsigned long v) : text(std::to_string(v)) {}
        Cell(const char* s) : text(s) {}
        Cell(std::string s) : text(std::move(s)) {}
        std::string text;
    };

    void add(std::vector<Cell> row);
    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;
    // Throws std::runtime_error if the file cannot be written.
    void write(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

}  // namespace heis::cli

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace doqf {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::size_t column(const std::string& name) const;
    const std::string& cell(std::size_t row, const std::string& name) const;
    double number(std::size_t row, const std::string& name) const;
};

// 17 significant digits, enough to round-trip a double.
std::string format_double(double x);

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text);
CsvTable read_csv(const std::string& path);

// Writes to a sibling temporary file and renames it over path.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace doqf

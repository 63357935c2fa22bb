#pragma once

#include <string>
#include <vector>

namespace nlspread {

// Fixed formatting keeps identical runs byte-identical.
std::string format_double(double v);       // %.12g, CSV payload
std::string format_double_exact(double v); // %.17g, round-trips exactly

std::string csv_row(const std::vector<std::string>& cells);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Comma-separated numeric table; a leading non-numeric row is the header.
CsvTable read_csv(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace nlspread

#pragma once

#include <string>
#include <vector>

namespace biphoton {

// Column-oriented CSV: comma separator, LF endings, 9 significant digits,
// header names carry units. Byte output is deterministic for fixed input.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> columns; // one vector per header entry

    std::string to_string() const;
};

std::string format_csv_number(double v);

// Writes via a temporary file in the same directory followed by a rename.
void write_file_atomic(const std::string& path, const std::string& contents);

} // namespace biphoton

#pragma once

#include <string>
#include <vector>

namespace hawkes {

/// Column-oriented CSV table. Cells print with 17 significant digits so a
/// read/re-emit round trip is byte-identical.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::string format_cell(double v);
void write_csv(const CsvTable& table, const std::string& path);
CsvTable read_csv(const std::string& path);

} // namespace hawkes

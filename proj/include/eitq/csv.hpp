#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace eitq {

/// Minimal headered-CSV table. Cells are doubles printed with 12 significant
/// digits; comment lines start with '#'.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

void write_csv(const Table& table, std::ostream& os, bool timestamp_header);
void write_csv_file(const Table& table, const std::string& path, bool timestamp_header);

/// Parses a table written by write_csv (comment lines skipped).
Table read_csv(std::istream& is);
Table read_csv_file(const std::string& path);

std::string format_double(double v);  // %.12g

}  // namespace eitq

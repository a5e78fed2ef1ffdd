#include "eitq/csv.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eitq {

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("row width does not match the header");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const Table& table, std::ostream& os, bool timestamp_header) {
  if (timestamp_header) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[64];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated " << stamp << "\n";
  }
  for (size_t i = 0; i < table.columns.size(); ++i)
    os << table.columns[i] << (i + 1 == table.columns.size() ? "\n" : ",");
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      os << format_double(row[i]) << (i + 1 == row.size() ? "\n" : ",");
  }
}

void write_csv_file(const Table& table, const std::string& path, bool timestamp_header) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  write_csv(table, os, timestamp_header);
}

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  bool header_done = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (!header_done) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      header_done = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      size_t pos = 0;
      row.push_back(std::stod(cell, &pos));
      if (pos == 0) throw std::runtime_error("non-numeric cell: " + cell);
    }
    t.add_row(std::move(row));
  }
  if (!header_done) throw std::runtime_error("missing CSV header");
  return t;
}

Table read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open input file: " + path);
  return read_csv(is);
}

}  // namespace eitq

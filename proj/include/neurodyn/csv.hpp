#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace neurodyn::csv {

// Shortest decimal representation that round-trips to the same double
// (up to 17 significant digits), so golden files are stable.
std::string format_double(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  std::size_t size() const { return rows.size(); }
};

std::string to_csv(const Table& table);

// Writes the table as CSV or as a JSON document with a version field.
void write_csv(const Table& table, const std::filesystem::path& path);
void write_json(const Table& table, const std::string& name,
                const std::filesystem::path& path);

}  // namespace neurodyn::csv

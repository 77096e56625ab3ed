#include "neurodyn/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace neurodyn::csv {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("Table: row width does not match the header");
  }
  rows.push_back(std::move(row));
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("cannot open output file: " + path.string());
  }
  f << body;
}

}  // namespace

void write_csv(const Table& table, const std::filesystem::path& path) {
  write_file(path, to_csv(table));
}

void write_json(const Table& table, const std::string& name,
                const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["version"] = 1;
  doc["name"] = name;
  doc["columns"] = table.columns;
  auto& rows = doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& cell : row) {
      // Numeric cells stay numeric in the JSON form.
      try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used == cell.size()) {
          r.push_back(v);
          continue;
        }
      } catch (const std::exception&) {
      }
      r.push_back(cell);
    }
    rows.push_back(std::move(r));
  }
  write_file(path, doc.dump(2) + "\n");
}

}  // namespace neurodyn::csv

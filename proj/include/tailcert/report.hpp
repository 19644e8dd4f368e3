#pragma once

#include <string>
#include <variant>
#include <vector>

namespace tailcert {

// One report cell. All numbers travel as doubles so a value survives the
// CSV -> JSON -> CSV loop bit for bit (counts stay exact below 2^53).
using Cell = std::variant<double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

// CSV with a header line; doubles printed with 17 significant digits.
std::string to_csv(const Table& table);
// {"columns": [...], "rows": [[...], ...]} carrying the same cells.
std::string to_json_text(const Table& table);

Table parse_csv(const std::string& text);
Table parse_json_text(const std::string& text);

// Field-for-field equality; doubles compare by bit pattern.
bool tables_equal(const Table& x, const Table& y);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace tailcert

#include "tailcert/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tailcert/errors.hpp"

namespace tailcert {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_escape(const std::string& s) {
  if (!needs_quoting(s)) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

bool reads_as_nonstring(const std::string& s) {
  if (s.empty() || s == "true" || s == "false") return true;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

std::string cell_to_csv(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) {
    return format_double(std::get<double>(cell));
  }
  if (std::holds_alternative<bool>(cell)) {
    return std::get<bool>(cell) ? "true" : "false";
  }
  const std::string& s = std::get<std::string>(cell);
  // Quote any text that would otherwise re-parse as a number or boolean.
  if (!needs_quoting(s) && reads_as_nonstring(s)) return "\"" + s + "\"";
  return csv_escape(s);
}

Cell classify(const std::string& text, bool was_quoted) {
  if (!was_quoted) {
    if (text == "true") return Cell(true);
    if (text == "false") return Cell(false);
    if (!text.empty()) {
      char* end = nullptr;
      const double v = std::strtod(text.c_str(), &end);
      if (end == text.c_str() + text.size()) return Cell(v);
    }
  }
  return Cell(text);
}

// Splits one CSV record; quoted fields may contain commas and doubled quotes.
std::vector<Cell> parse_record(const std::string& line) {
  std::vector<Cell> cells;
  std::string field;
  bool quoted = false;
  bool in_quotes = false;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    const char c = i < line.size() ? line[i] : ',';
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.empty()) {
      in_quotes = true;
      quoted = true;
    } else if (c == ',') {
      cells.push_back(classify(field, quoted));
      field.clear();
      quoted = false;
    } else {
      field += c;
    }
  }
  return cells;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ConfigError("report: row width does not match the column count");
  }
  rows.push_back(std::move(row));
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << cell_to_csv(row[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string to_json_text(const Table& table) {
  nlohmann::json j;
  j["columns"] = table.columns;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& cell : row) {
      if (std::holds_alternative<double>(cell)) {
        jr.push_back(std::get<double>(cell));
      } else if (std::holds_alternative<bool>(cell)) {
        jr.push_back(std::get<bool>(cell));
      } else {
        jr.push_back(std::get<std::string>(cell));
      }
    }
    j["rows"].push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

Table parse_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      for (const auto& cell : parse_record(line)) {
        if (std::holds_alternative<std::string>(cell)) {
          table.columns.push_back(std::get<std::string>(cell));
        } else if (std::holds_alternative<bool>(cell)) {
          table.columns.push_back(std::get<bool>(cell) ? "true" : "false");
        } else {
          table.columns.push_back(format_double(std::get<double>(cell)));
        }
      }
      first = false;
    } else {
      table.add_row(parse_record(line));
    }
  }
  return table;
}

Table parse_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("columns") || !j.contains("rows")) {
    throw ConfigError("report: JSON must carry 'columns' and 'rows'");
  }
  Table table;
  for (const auto& c : j["columns"]) {
    table.columns.push_back(c.get<std::string>());
  }
  for (const auto& jr : j["rows"]) {
    std::vector<Cell> row;
    for (const auto& cell : jr) {
      if (cell.is_boolean()) {
        row.push_back(Cell(cell.get<bool>()));
      } else if (cell.is_number()) {
        row.push_back(Cell(cell.get<double>()));
      } else if (cell.is_string()) {
        row.push_back(Cell(cell.get<std::string>()));
      } else {
        throw ConfigError("report: unsupported JSON cell type");
      }
    }
    table.add_row(std::move(row));
  }
  return table;
}

bool tables_equal(const Table& x, const Table& y) {
  if (x.columns != y.columns) return false;
  if (x.rows.size() != y.rows.size()) return false;
  for (std::size_t r = 0; r < x.rows.size(); ++r) {
    const auto& a = x.rows[r];
    const auto& b = y.rows[r];
    if (a.size() != b.size()) return false;
    for (std::size_t c = 0; c < a.size(); ++c) {
      if (a[c].index() != b[c].index()) return false;
      if (std::holds_alternative<double>(a[c])) {
        const double u = std::get<double>(a[c]);
        const double v = std::get<double>(b[c]);
        if (std::memcmp(&u, &v, sizeof(double)) != 0) return false;
      } else if (a[c] != b[c]) {
        return false;
      }
    }
  }
  return true;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write file: " + path);
  out << content;
}

}  // namespace tailcert

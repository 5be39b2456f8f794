#include "tufsim/csv.h"

#include <algorithm>

#include "tufsim/errors.h"

namespace tufsim::csv {

namespace {

bool is_blank(const Row& row) {
  return std::all_of(row.begin(), row.end(),
                     [](const std::string& cell) { return trim(cell).empty(); });
}

}  // namespace

std::optional<std::size_t> Table::column(std::string_view name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  auto first = s.find_first_not_of(kSpace);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(kSpace);
  return s.substr(first, last - first + 1);
}

Table parse(std::string_view text) {
  // Skip a UTF-8 byte order mark.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  std::vector<Row> records;
  std::vector<std::size_t> lines;
  Row row;
  std::string cell;
  bool in_quotes = false;
  bool row_open = false;
  std::size_t line = 1;
  std::size_t row_line = 1;

  auto end_row = [&] {
    row.push_back(std::move(cell));
    cell.clear();
    records.push_back(std::move(row));
    lines.push_back(row_line);
    row.clear();
    row_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (!row_open) {
      row_open = true;
      row_line = line;
    }
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        cell.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        in_quotes = true;
        break;
      case ',':
        row.push_back(std::move(cell));
        cell.clear();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        [[fallthrough]];
      case '\n':
        end_row();
        ++line;
        break;
      default:
        cell.push_back(c);
    }
  }
  if (in_quotes) {
    throw ParseError("unterminated quoted field starting on line " +
                     std::to_string(row_line));
  }
  if (row_open) end_row();

  Table table;
  std::size_t i = 0;
  while (i < records.size() && is_blank(records[i])) ++i;
  if (i == records.size()) throw ParseError("CSV input has no header row");
  for (auto& h : records[i]) table.header.emplace_back(trim(h));
  for (++i; i < records.size(); ++i) {
    if (is_blank(records[i])) continue;
    table.rows.push_back(std::move(records[i]));
    table.line.push_back(lines[i]);
  }
  return table;
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace tufsim::csv

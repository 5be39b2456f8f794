#ifndef TUFSIM_CSV_H_
#define TUFSIM_CSV_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tufsim::csv {

using Row = std::vector<std::string>;

/// A parsed CSV document. `line` records the 1-based physical line each
/// data row started on, so callers can report errors against the file.
struct Table {
  Row header;
  std::vector<Row> rows;
  std::vector<std::size_t> line;

  /// Index of the header cell equal to `name`, if any.
  std::optional<std::size_t> column(std::string_view name) const;
};

std::string_view trim(std::string_view s);

/// Parses comma-separated text with RFC 4180 double-quote escaping.
/// Header cells are whitespace-trimmed. Rows that are empty or contain only
/// whitespace are dropped. A missing header is a ParseError.
Table parse(std::string_view text);

/// Quotes a field if it contains a comma, quote, or line break.
std::string escape(std::string_view field);

}  // namespace tufsim::csv

#endif  // TUFSIM_CSV_H_

#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

namespace variety::csv {

struct Table {
  std::vector<std::string> header;
  /// rows[i] holds the fields of data line `line_numbers[i]` (1-based, header
  /// is line 1).
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;

  /// Column index of `name`, or npos.
  [[nodiscard]] std::size_t column(const std::string& name) const;
};

/// RFC 4180-style reader: comma separated, optional double-quoted fields with
/// "" escapes, CRLF tolerated, blank lines skipped. Throws ParseError (with the
/// line number) on a malformed line or a row whose width differs from the
/// header.
[[nodiscard]] Table read(std::istream& in, const std::string& source_name);
[[nodiscard]] Table read_file(const std::string& path);

/// Quotes the field if it contains a comma, quote or newline.
[[nodiscard]] std::string escape(const std::string& field);

}  // namespace variety::csv

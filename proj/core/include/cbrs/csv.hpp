#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cbrs {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column, or -1.
  int column(std::string_view name) const;
};

/// RFC 4180 reader: quoted fields, doubled quotes, CRLF or LF line breaks.
/// The first record is the header. Raises ParseError on unbalanced quotes or
/// rows with a different field count than the header.
CsvTable parse_csv(std::string_view text);

/// Quotes a field if it contains a comma, quote or line break.
std::string csv_field(std::string_view value);

/// Joins fields into one CRLF-terminated record.
std::string csv_record(std::span<const std::string> fields);

/// Shortest decimal representation that round-trips exactly (std::to_chars).
std::string format_double(double value);

/// Exact inverse of format_double; raises ParseError on garbage.
double parse_double(std::string_view text);

} // namespace cbrs

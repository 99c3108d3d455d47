#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uwbsim {

/// Comma-separated values with '.' decimals. Blank lines are skipped.
struct CsvTable {
  std::vector<std::string> header;  // empty when read without a header
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row

  /// Column index by header name, if present.
  std::optional<std::size_t> column(std::string_view name) const;
};

/// Throws ConfigError on ragged rows.
CsvTable read_csv(std::istream& in, bool has_header);

/// Locale-independent double parsing; throws ConfigError naming the line.
double parse_double(std::string_view text, std::size_t line);

/// Shortest representation that round-trips; identical on every platform.
std::string format_double(double v);

}  // namespace uwbsim

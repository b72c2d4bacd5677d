#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace transitod::csv {

// Minimal RFC-4180-ish CSV support: comma separator, optional double-quote
// escaping, LF or CRLF line endings. All files we emit use plain unquoted
// fields and LF endings.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // 1-based line number of each data row in the source file, for error messages.
  std::vector<int> line_numbers;

  int column(const std::string& name) const;  // -1 if absent
};

std::vector<std::string> split_line(const std::string& line);

// Reads a whole file. Throws std::runtime_error on I/O failure or a
// ragged row (row width != header width).
Table read_file(const std::string& path);

std::string join_row(const std::vector<std::string>& fields);

// Parses "HH:MM:SS"; hours may exceed 23 for post-midnight service.
// Returns seconds since service-day midnight. Throws on malformed input.
std::int64_t parse_hms(const std::string& text);

std::string format_hms(std::int64_t seconds);

// Shortest decimal representation that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace transitod::csv

#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace elpath {

struct CsvRow {
  std::size_t line_no = 0;  // 1-based, header is line 1
  std::vector<std::string> fields;
};

/// Reads a comma-separated file. The first non-empty line is the header;
/// subsequent non-empty lines become rows. No quoting is supported (none
/// of the pipeline formats need it).
struct CsvFile {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
};

CsvFile read_csv(const std::filesystem::path& path);

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);
  void write_row(std::span<const std::string> fields);
  void write_row(std::initializer_list<std::string> fields);

 private:
  std::ofstream out_;
};

/// Shortest round-trip decimal text for a double (std::to_chars); "nan"
/// and "inf"/"-inf" for non-finite values.
std::string format_double(double value);

/// Strict full-field double parse; throws ErrorKind::Parse with `context`
/// in the message on failure.
double parse_double_field(const std::string& text, const std::string& context);

std::int64_t parse_int_field(const std::string& text, const std::string& context);

}  // namespace elpath

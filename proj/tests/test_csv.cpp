#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "elpath/csv.hpp"
#include "elpath/errors.hpp"
#include "support.hpp"

using namespace elpath;
using testutil::TempDir;

TEST_SUITE_BEGIN("csv");

TEST_CASE("format_double emits shortest round-trip text") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(16.0) == "16");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(0.0) == "0");

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1e9, 1e9);
  for (int i = 0; i < 5000; ++i) {
    const double v = dist(rng);
    const std::string text = format_double(v);
    CHECK(parse_double_field(text, "round-trip") == v);
  }
  // Denormal and extreme magnitudes survive too.
  for (double v : {5e-324, 1.7976931348623157e308, -4.9406564584124654e-324}) {
    CHECK(parse_double_field(format_double(v), "extreme") == v);
  }
}

TEST_CASE("strict field parsing rejects partial and non-numeric text") {
  CHECK(parse_double_field("288.15", "t") == 288.15);
  CHECK(parse_int_field("-42", "n") == -42);
  for (const char* text : {"", "12x", "x12", "1 2", "nan(", "--3"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_double_field(text, "ctx"), Error);
  }
  for (const char* text : {"", "3.5", "12x", " 7"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_int_field(text, "ctx"), Error);
  }
  // The context string must surface in the message so errors name the cell.
  try {
    parse_double_field("bogus", "toa.csv line 7");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("toa.csv line 7") != std::string::npos);
  }
}

TEST_CASE("read_csv splits header and rows with 1-based line numbers") {
  TempDir dir;
  const auto path = dir / "t.csv";
  testutil::write_file(path, "a,b\r\n1,2\n\n3,4\n");
  const CsvFile file = read_csv(path);
  REQUIRE(file.header.size() == 2);
  CHECK(file.header[0] == "a");
  CHECK(file.header[1] == "b");
  REQUIRE(file.rows.size() == 2);  // blank line skipped
  CHECK(file.rows[0].line_no == 2);
  CHECK(file.rows[0].fields == std::vector<std::string>{"1", "2"});
  CHECK(file.rows[1].line_no == 4);
  CHECK(file.rows[1].fields == std::vector<std::string>{"3", "4"});
}

TEST_CASE("read_csv keeps empty cells so they can become gaps") {
  TempDir dir;
  const auto path = dir / "gaps.csv";
  testutil::write_file(path, "a,b,c\n1,,3\n");
  const CsvFile file = read_csv(path);
  REQUIRE(file.rows.size() == 1);
  REQUIRE(file.rows[0].fields.size() == 3);
  CHECK(file.rows[0].fields[1].empty());
}

TEST_CASE("missing files and empty files are reported") {
  TempDir dir;
  CHECK_THROWS_AS(read_csv(dir / "absent.csv"), Error);
  try {
    read_csv(dir / "absent.csv");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  const auto empty = dir / "empty.csv";
  testutil::write_file(empty, "");
  CHECK_THROWS_AS(read_csv(empty), Error);  // no header row
}

TEST_CASE("CsvWriter output parses back identically") {
  TempDir dir;
  const auto path = dir / "w.csv";
  {
    CsvWriter writer(path);
    writer.write_row({"timestamp", "toa_us"});
    writer.write_row({"2013-01-11T00:00:00Z", format_double(757.38)});
  }
  const CsvFile file = read_csv(path);
  CHECK(file.header == std::vector<std::string>{"timestamp", "toa_us"});
  REQUIRE(file.rows.size() == 1);
  CHECK(parse_double_field(file.rows[0].fields[1], "") == 757.38);
}

TEST_SUITE_END();

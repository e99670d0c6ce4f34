#include "elpath/time.hpp"

#include <array>
#include <charconv>

#include "elpath/errors.hpp"

namespace elpath {

namespace {

// Days from 1970-01-01 for a proleptic Gregorian civil date
// (Howard Hinnant's days_from_civil).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);             // [0, 399]
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;   // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

bool is_leap(std::int64_t y) {
  return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

unsigned days_in_month(std::int64_t y, unsigned m) {
  static constexpr std::array<unsigned, 12> lengths{31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return lengths[m - 1];
}

int parse_uint_field(std::string_view text, std::size_t pos, std::size_t len,
                     std::string_view whole) {
  int value = 0;
  const char* first = text.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, value);
  if (ec != std::errc{} || ptr != first + len) {
    throw Error(ErrorKind::Parse,
                "invalid timestamp '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

UtcSeconds parse_iso8601_utc(std::string_view text) {
  // Fixed layout: YYYY-MM-DDTHH:MM:SSZ
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' ||
      text[10] != 'T' || text[13] != ':' || text[16] != ':' ||
      text[19] != 'Z') {
    throw Error(ErrorKind::Parse,
                "invalid timestamp '" + std::string(text) +
                    "' (expected YYYY-MM-DDTHH:MM:SSZ)");
  }
  const int year = parse_uint_field(text, 0, 4, text);
  const int month = parse_uint_field(text, 5, 2, text);
  const int day = parse_uint_field(text, 8, 2, text);
  const int hour = parse_uint_field(text, 11, 2, text);
  const int minute = parse_uint_field(text, 14, 2, text);
  const int second = parse_uint_field(text, 17, 2, text);

  if (month < 1 || month > 12 || day < 1 ||
      day > static_cast<int>(days_in_month(year, month)) || hour > 23 ||
      minute > 59 || second > 59) {
    throw Error(ErrorKind::Parse,
                "timestamp field out of range in '" + std::string(text) + "'");
  }
  return days_from_civil(year, month, day) * 86400 + hour * 3600 +
         minute * 60 + second;
}

std::string format_iso8601_utc(UtcSeconds t) {
  std::int64_t days = t / 86400;
  std::int64_t sod = t % 86400;
  if (sod < 0) {
    sod += 86400;
    --days;
  }
  std::int64_t year;
  unsigned month, day;
  civil_from_days(days, year, month, day);

  char buf[21];
  auto put2 = [](char* p, std::int64_t v) {
    p[0] = static_cast<char>('0' + v / 10);
    p[1] = static_cast<char>('0' + v % 10);
  };
  buf[0] = static_cast<char>('0' + (year / 1000) % 10);
  buf[1] = static_cast<char>('0' + (year / 100) % 10);
  buf[2] = static_cast<char>('0' + (year / 10) % 10);
  buf[3] = static_cast<char>('0' + year % 10);
  buf[4] = '-';
  put2(buf + 5, month);
  buf[7] = '-';
  put2(buf + 8, day);
  buf[10] = 'T';
  put2(buf + 11, sod / 3600);
  buf[13] = ':';
  put2(buf + 14, (sod / 60) % 60);
  buf[16] = ':';
  put2(buf + 17, sod % 60);
  buf[19] = 'Z';
  buf[20] = '\0';
  return std::string(buf, 20);
}

}  // namespace elpath

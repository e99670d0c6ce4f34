#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace elpath {

/// UTC instant as seconds since the Unix epoch. All file formats carry
/// second-resolution ISO-8601 timestamps (YYYY-MM-DDTHH:MM:SSZ).
using UtcSeconds = std::int64_t;

/// Parses a strict `YYYY-MM-DDTHH:MM:SSZ` timestamp. Throws ErrorKind::Parse.
UtcSeconds parse_iso8601_utc(std::string_view text);

std::string format_iso8601_utc(UtcSeconds t);

}  // namespace elpath

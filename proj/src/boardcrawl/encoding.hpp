#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace bc {

using Timestamp = std::chrono::sys_seconds;

Timestamp now_utc_seconds();

std::string to_lower_ascii(std::string_view s);

// Trims and squeezes whitespace runs to single spaces.
std::string collapse_whitespace(std::string_view s);

std::string hex_encode(const unsigned char* data, std::size_t n);

// Encoding used for free-text fields inside record headers: bytes outside
// printable ASCII, '%' and ',' become %XX so a header line stays one line
// and comma-separated lists stay splittable.
std::string header_field_encode(std::string_view s);
std::optional<std::string> header_field_decode(std::string_view s);

// RFC 3339 at second precision, always UTC ("2026-08-08T12:34:56Z").
std::string format_rfc3339(Timestamp t);
std::optional<Timestamp> parse_rfc3339(std::string_view s);

// Shortest text that round-trips a double exactly (17 significant digits).
std::string format_double17(double v);
std::optional<double> parse_double(std::string_view s);

}  // namespace bc

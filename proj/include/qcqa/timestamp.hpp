#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace qcqa {

using Timestamp = std::chrono::sys_seconds;

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_rfc3339(Timestamp t);

/// Accepts RFC 3339 date-times with 'Z' or a numeric offset; fractional
/// seconds are truncated.
std::optional<Timestamp> parse_rfc3339(std::string_view text);

inline Timestamp now_utc()
{
    return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

}  // namespace qcqa

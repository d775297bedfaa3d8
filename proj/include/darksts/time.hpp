#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace darksts {

using Timestamp = std::chrono::sys_seconds;
using Seconds = std::chrono::seconds;

/// Parses "YYYY-MM-DDTHH:MM:SS" with an optional fractional part (truncated)
/// and an optional "Z" or "+00:00" suffix. A space is accepted in place of 'T'.
/// Offsets other than UTC are rejected.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(Timestamp t);

/// "YYYY-MM-DD" of the UTC day containing t.
std::string format_date(Timestamp t);

inline Timestamp from_unix(std::int64_t s) { return Timestamp{Seconds{s}}; }
inline std::int64_t to_unix(Timestamp t) { return t.time_since_epoch().count(); }

}  // namespace darksts

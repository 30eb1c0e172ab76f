#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace collabpred {

/// All timestamps are UTC with millisecond resolution.
using Timestamp = std::chrono::time_point<std::chrono::system_clock,
                                          std::chrono::milliseconds>;
using Duration = std::chrono::milliseconds;

inline Timestamp timestamp_from_ms(std::int64_t ms_since_epoch) {
    return Timestamp(Duration(ms_since_epoch));
}

inline std::int64_t ms_since_epoch(Timestamp t) {
    return t.time_since_epoch().count();
}

/// Formats as "2024-01-31T09:30:00.250+00:00" (fixed width, always UTC).
std::string format_iso8601(Timestamp t);

/// Parses ISO-8601 with 'T' or ' ' separator, optional fractional seconds
/// (truncated to milliseconds) and an optional 'Z', "+hh:mm" or "+hhmm"
/// offset. A missing offset is read as UTC.
std::optional<Timestamp> parse_iso8601(std::string_view s);

} // namespace collabpred

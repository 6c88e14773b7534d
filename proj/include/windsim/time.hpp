#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace windsim {

/// Seconds since 1970-01-01T00:00:00Z. All timestamps in this library are UTC.
using Instant = std::int64_t;

inline constexpr std::int64_t seconds_per_hour = 3600;
inline constexpr std::int64_t seconds_per_day = 86400;
inline constexpr std::int64_t hours_per_year = 8760;

struct CivilDateTime {
    int year = 1970;
    unsigned month = 1;  // 1..12
    unsigned day = 1;    // 1..31
    unsigned hour = 0;
    unsigned minute = 0;
    unsigned second = 0;
};

Instant make_instant(int year, unsigned month, unsigned day,
                     unsigned hour = 0, unsigned minute = 0, unsigned second = 0);

CivilDateTime civil_from_instant(Instant t);

/// Parses "YYYY-MM-DD[Thh:mm[:ss]][Z]" (space accepted instead of 'T').
/// Throws DataError on anything else.
Instant parse_instant(std::string_view text);

/// "YYYY-MM-DDThh:mm:ssZ"
std::string format_instant(Instant t);

/// Calendar-day ordinal (days since epoch, floor division — valid before 1970 too).
std::int64_t day_index(Instant t);
Instant day_start(std::int64_t day_idx);

/// Calendar-month ordinal: (year - 1970) * 12 + month - 1.
std::int64_t month_index(Instant t);
Instant month_start(std::int64_t month_idx);

Instant year_start(int year);

}  // namespace windsim

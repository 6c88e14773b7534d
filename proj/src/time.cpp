#include "windsim/time.hpp"

#include <charconv>
#include <chrono>

#include "windsim/errors.hpp"

namespace windsim {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

int parse_int(std::string_view s, std::size_t pos, std::size_t len, const char* what) {
    if (pos + len > s.size()) throw DataError(std::string("timestamp too short for ") + what + ": '" + std::string(s) + "'");
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, value);
    if (ec != std::errc{} || ptr != s.data() + pos + len)
        throw DataError(std::string("bad ") + what + " in timestamp '" + std::string(s) + "'");
    return value;
}

}  // namespace

Instant make_instant(int year, unsigned month, unsigned day,
                     unsigned hour, unsigned minute, unsigned second) {
    using namespace std::chrono;
    if (month < 1 || month > 12) throw DataError("month out of range: " + std::to_string(month));
    year_month_day ymd{std::chrono::year{year}, std::chrono::month{month}, std::chrono::day{day}};
    if (!ymd.ok()) throw DataError("invalid calendar date");
    if (hour > 23 || minute > 59 || second > 60) throw DataError("invalid time of day");
    sys_days days{ymd};
    return static_cast<Instant>(days.time_since_epoch().count()) * seconds_per_day +
           std::int64_t{hour} * 3600 + std::int64_t{minute} * 60 + std::int64_t{second};
}

CivilDateTime civil_from_instant(Instant t) {
    using namespace std::chrono;
    const std::int64_t days = floor_div(t, seconds_per_day);
    std::int64_t rem = t - days * seconds_per_day;
    year_month_day ymd{sys_days{std::chrono::days{days}}};
    CivilDateTime out;
    out.year = static_cast<int>(ymd.year());
    out.month = static_cast<unsigned>(ymd.month());
    out.day = static_cast<unsigned>(ymd.day());
    out.hour = static_cast<unsigned>(rem / 3600);
    rem %= 3600;
    out.minute = static_cast<unsigned>(rem / 60);
    out.second = static_cast<unsigned>(rem % 60);
    return out;
}

Instant parse_instant(std::string_view text) {
    // strip a trailing 'Z'
    if (!text.empty() && (text.back() == 'Z' || text.back() == 'z')) text.remove_suffix(1);
    if (text.size() < 10) throw DataError("unparseable timestamp '" + std::string(text) + "'");
    const int y = parse_int(text, 0, 4, "year");
    if (text[4] != '-' || text[7] != '-') throw DataError("unparseable timestamp '" + std::string(text) + "'");
    const int mo = parse_int(text, 5, 2, "month");
    const int d = parse_int(text, 8, 2, "day");
    int h = 0, mi = 0, s = 0;
    if (text.size() > 10) {
        if (text[10] != 'T' && text[10] != ' ') throw DataError("unparseable timestamp '" + std::string(text) + "'");
        if (text.size() < 16 || text[13] != ':') throw DataError("unparseable timestamp '" + std::string(text) + "'");
        h = parse_int(text, 11, 2, "hour");
        mi = parse_int(text, 14, 2, "minute");
        if (text.size() > 16) {
            if (text[16] != ':' || text.size() != 19) throw DataError("unparseable timestamp '" + std::string(text) + "'");
            s = parse_int(text, 17, 2, "second");
        }
    }
    return make_instant(y, static_cast<unsigned>(mo), static_cast<unsigned>(d),
                        static_cast<unsigned>(h), static_cast<unsigned>(mi), static_cast<unsigned>(s));
}

std::string format_instant(Instant t) {
    const CivilDateTime c = civil_from_instant(t);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02u:%02u:%02uZ",
                  c.year, c.month, c.day, c.hour, c.minute, c.second);
    return buf;
}

std::int64_t day_index(Instant t) { return floor_div(t, seconds_per_day); }

Instant day_start(std::int64_t day_idx) { return day_idx * seconds_per_day; }

std::int64_t month_index(Instant t) {
    const CivilDateTime c = civil_from_instant(t);
    return std::int64_t{c.year - 1970} * 12 + (c.month - 1);
}

Instant month_start(std::int64_t month_idx) {
    const std::int64_t y = 1970 + floor_div(month_idx, 12);
    const std::int64_t m = month_idx - floor_div(month_idx, 12) * 12;
    return make_instant(static_cast<int>(y), static_cast<unsigned>(m + 1), 1);
}

Instant year_start(int year) { return make_instant(year, 1, 1); }

}  // namespace windsim

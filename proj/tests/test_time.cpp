#include <doctest.h>

#include "windsim/errors.hpp"
#include "windsim/time.hpp"

using namespace windsim;

TEST_CASE("instant round trips") {
    const Instant t = make_instant(2014, 7, 1, 12, 30, 15);
    CHECK(format_instant(t) == "2014-07-01T12:30:15Z");
    CHECK(parse_instant("2014-07-01T12:30:15Z") == t);
    CHECK(parse_instant("2014-07-01 12:30:15") == t);
    CHECK(parse_instant("2014-07-01T12:30") == t - 15);
    CHECK(parse_instant("2014-07-01") == make_instant(2014, 7, 1));
    CHECK(make_instant(1970, 1, 1) == 0);
    CHECK(make_instant(2016, 2, 29) > 0);  // leap day is valid
}

TEST_CASE("bad timestamps are rejected") {
    CHECK_THROWS_AS(parse_instant("2014/07/01"), DataError);
    CHECK_THROWS_AS(parse_instant("2014-13-01"), DataError);
    CHECK_THROWS_AS(parse_instant("2015-02-29"), DataError);
    CHECK_THROWS_AS(parse_instant("2014-07-01T25:00"), DataError);
    CHECK_THROWS_AS(parse_instant("nonsense"), DataError);
}

TEST_CASE("calendar buckets") {
    const Instant jan31_23 = make_instant(2014, 1, 31, 23);
    const Instant feb1_00 = make_instant(2014, 2, 1, 0);
    CHECK(day_index(feb1_00) == day_index(jan31_23) + 1);
    CHECK(month_index(feb1_00) == month_index(jan31_23) + 1);
    CHECK(day_start(day_index(jan31_23)) == make_instant(2014, 1, 31));
    CHECK(month_start(month_index(jan31_23)) == make_instant(2014, 1, 1));
    CHECK(month_index(make_instant(1969, 12, 31)) == -1);  // floor semantics before the epoch
    CHECK(year_start(2014) == make_instant(2014, 1, 1));
}

TEST_CASE("mid-year instants") {
    // a non-leap year spans 8760 hours; its midpoint lands on an hourly axis
    const Instant start = year_start(2014);
    const Instant end = year_start(2015);
    CHECK((end - start) == 8760 * seconds_per_hour);
    CHECK((end - start) / 2 % seconds_per_hour == 0);
}

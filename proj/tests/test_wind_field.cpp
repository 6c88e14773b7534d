#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "windsim/errors.hpp"
#include "windsim/wind_field.hpp"

using namespace windsim;
using test_support::TempDir;
using test_support::write_file;

namespace {

// the closed formulas behind the committed NetCDF fixtures
double fixture_u(std::size_t t, std::size_t level, std::size_t i, std::size_t j) {
    return 3.0 + 0.01 * static_cast<double>(t) + 0.1 * static_cast<double>(i) +
           0.05 * static_cast<double>(j) + 2.0 * static_cast<double>(level);
}
double fixture_v(std::size_t t, std::size_t, std::size_t i, std::size_t j) {
    return 4.0 - 0.01 * static_cast<double>(t) + 0.1 * static_cast<double>(j) +
           0.02 * static_cast<double>(i);
}

const BoundingBox kWholeWorld{-90, 90, -180, 180};
const TimeRange kAllOf2014{make_instant(2014, 1, 1), make_instant(2015, 1, 1)};

std::string csv_fixture(std::size_t n_time, std::size_t n_lat, std::size_t n_lon) {
    std::ostringstream out;
    out << "# levels_m: 10 100\n";
    out << "time,lat,lon,u_lo,v_lo,u_hi,v_hi\n";
    for (std::size_t t = 0; t < n_time; ++t)
        for (std::size_t i = 0; i < n_lat; ++i)
            for (std::size_t j = 0; j < n_lon; ++j)
                out << format_instant(make_instant(2014, 1, 1) + static_cast<Instant>(t) * 3600) << ','
                    << (40.0 + static_cast<double>(i)) << ',' << (10.0 + static_cast<double>(j)) << ','
                    << fixture_u(t, 0, i, j) << ',' << fixture_v(t, 0, i, j) << ','
                    << fixture_u(t, 1, i, j) << ',' << fixture_v(t, 1, i, j) << '\n';
    return out.str();
}

}  // namespace

TEST_CASE("netcdf fixture loads with expected geometry and values") {
    const auto field = load_wind_field(test_support::data_dir() / "wind_small.nc", kWholeWorld, kAllOf2014);
    CHECK(field.grid.n_lat == 4);
    CHECK(field.grid.n_lon == 4);
    CHECK(field.grid.lat_start == doctest::Approx(40.0));
    CHECK(field.grid.lon_start == doctest::Approx(10.0));
    CHECK(field.time.size == 48);
    CHECK(field.time.start == make_instant(2014, 1, 1));
    CHECK(field.level_lo_m == 10.0);
    CHECK(field.level_hi_m == 100.0);
    CHECK(field.u_at(5, WindLevel::hi, GridIndex{2, 1}) == doctest::Approx(5.3));
    CHECK(field.v_at(7, WindLevel::lo, GridIndex{0, 3}) == doctest::Approx(fixture_v(7, 0, 0, 3)));
}

TEST_CASE("netcdf with an unlimited time dimension reads record-interleaved data") {
    const auto field =
        load_wind_field(test_support::data_dir() / "wind_record.nc", kWholeWorld, kAllOf2014);
    CHECK(field.time.size == 48);
    CHECK(field.grid.n_lat == 4);
    for (std::size_t t : {0ul, 5ul, 29ul, 47ul}) {
        CHECK(field.u_at(t, WindLevel::hi, GridIndex{2, 1}) ==
              doctest::Approx(fixture_u(t, 1, 2, 1)).epsilon(1e-6));
        CHECK(field.v_at(t, WindLevel::lo, GridIndex{3, 0}) ==
              doctest::Approx(fixture_v(t, 0, 3, 0)).epsilon(1e-6));
    }
}

TEST_CASE("packed netcdf unpacks scale/offset and flips descending latitude") {
    const auto field = load_wind_field(test_support::data_dir() / "wind_packed.nc", kWholeWorld, kAllOf2014);
    CHECK(field.grid.lat_start == doctest::Approx(40.0));  // ascending after the flip
    CHECK(field.time.size == 48);
    for (std::size_t t : {0ul, 13ul, 47ul})
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                CHECK(field.u_at(t, WindLevel::hi, GridIndex{i, j}) ==
                      doctest::Approx(fixture_u(t, 1, i, j)).epsilon(1e-3));
                CHECK(field.v_at(t, WindLevel::lo, GridIndex{i, j}) ==
                      doctest::Approx(fixture_v(t, 0, i, j)).epsilon(1e-3));
            }
}

TEST_CASE("bbox subsetting keeps only interior cells") {
    const BoundingBox interior{40.5, 42.5, 10.5, 12.5};  // 2x2 of the 4x4 fixture
    const auto field = load_wind_field(test_support::data_dir() / "wind_small.nc", interior, kAllOf2014);
    CHECK(field.grid.n_lat == 2);
    CHECK(field.grid.n_lon == 2);
    CHECK(field.grid.lat_start == doctest::Approx(41.0));
    CHECK(field.u_at(0, WindLevel::lo, GridIndex{0, 0}) == doctest::Approx(fixture_u(0, 0, 1, 1)));

    // same subset drawn from the descending-latitude packed file
    const auto packed =
        load_wind_field(test_support::data_dir() / "wind_packed.nc", interior, kAllOf2014);
    CHECK(packed.grid.n_lat == 2);
    CHECK(packed.grid.lat_start == doctest::Approx(41.0));
    CHECK(packed.u_at(3, WindLevel::hi, GridIndex{1, 0}) ==
          doctest::Approx(fixture_u(3, 1, 2, 1)).epsilon(1e-3));
}

TEST_CASE("time subsetting by direct enumeration") {
    // fixture covers 48 hourly steps; hours 6..17 of day one = 12 stamps
    const TimeRange hours_6_to_17{make_instant(2014, 1, 1, 6), make_instant(2014, 1, 1, 17)};
    const auto field =
        load_wind_field(test_support::data_dir() / "wind_small.nc", kWholeWorld, hours_6_to_17);
    CHECK(field.time.size == 12);
    CHECK(field.time.start == make_instant(2014, 1, 1, 6));
    CHECK(field.u_at(0, WindLevel::lo, GridIndex{0, 0}) == doctest::Approx(fixture_u(6, 0, 0, 0)));
}

TEST_CASE("empty selections are rejected") {
    const auto path = test_support::data_dir() / "wind_small.nc";
    CHECK_THROWS_AS(load_wind_field(path, BoundingBox{60, 70, 10, 13}, kAllOf2014), DataError);
    CHECK_THROWS_AS(
        load_wind_field(path, kWholeWorld, TimeRange{make_instant(2015, 6, 1), make_instant(2015, 6, 2)}),
        DataError);
}

TEST_CASE("csv fixture loads and matches the identity case") {
    TempDir tmp;
    const auto path = tmp / "wind.csv";
    write_file(path, csv_fixture(24, 4, 4));
    const auto field = load_wind_field(path, kWholeWorld, kAllOf2014);
    CHECK(field.grid.n_lat == 4);
    CHECK(field.time.size == 24);
    CHECK(field.u_at(3, WindLevel::hi, GridIndex{1, 2}) == doctest::Approx(fixture_u(3, 1, 1, 2)));

    // identity: full-extent bbox equals the file contents, and re-subsetting with
    // the same bbox is idempotent
    const BoundingBox tight{40.0, 43.0, 10.0, 13.0};
    const auto once = load_wind_field(path, tight, kAllOf2014);
    CHECK(once.u == field.u);
    CHECK(once.v == field.v);
}

TEST_CASE("csv fixture with a linear ramp extracts the ramp") {
    TempDir tmp;
    const auto path = tmp / "ramp.csv";
    std::ostringstream out;
    out << "# levels_m: 10 100\n";
    out << "time,lat,lon,u_lo,v_lo,u_hi,v_hi\n";
    for (int t = 0; t < 24; ++t)
        out << format_instant(make_instant(2014, 1, 1) + t * 3600) << ",40,10," << t << ",0," << 2 * t
            << ",0\n";
    write_file(path, out.str());
    const auto field = load_wind_field(path, kWholeWorld, kAllOf2014);
    const auto [u, v] = extract_series(field, GridIndex{0, 0}, WindLevel::lo);
    REQUIRE(u.size() == 24);
    for (int t = 0; t < 24; ++t) {
        CHECK(u[static_cast<std::size_t>(t)] == doctest::Approx(t));
        CHECK(v[static_cast<std::size_t>(t)] == 0.0);
    }
}

TEST_CASE("extract_series is the stored data, no interpolation") {
    const auto field = load_wind_field(test_support::data_dir() / "wind_small.nc", kWholeWorld, kAllOf2014);
    const auto [u, v] = extract_series(field, GridIndex{2, 1}, WindLevel::hi);
    REQUIRE(u.size() == field.time.size);
    for (std::size_t t = 0; t < u.size(); ++t) {
        CHECK(u[t] == field.u_at(t, WindLevel::hi, GridIndex{2, 1}));
        CHECK(v[t] == field.v_at(t, WindLevel::hi, GridIndex{2, 1}));
    }
    CHECK_THROWS_AS(extract_series(field, GridIndex{9, 0}, WindLevel::lo), DataError);
}

TEST_CASE("malformed inputs raise format errors") {
    TempDir tmp;

    SUBCASE("missing levels comment") {
        const auto path = tmp / "nolevels.csv";
        write_file(path, "time,lat,lon,u_lo,v_lo,u_hi,v_hi\n2014-01-01T00:00:00Z,40,10,1,2,3,4\n");
        CHECK_THROWS_AS(load_wind_field(path, kWholeWorld, kAllOf2014), DataError);
    }
    SUBCASE("non-uniform time axis") {
        const auto path = tmp / "gappy.csv";
        write_file(path,
                   "# levels_m: 10 100\n"
                   "time,lat,lon,u_lo,v_lo,u_hi,v_hi\n"
                   "2014-01-01T00:00:00Z,40,10,1,2,3,4\n"
                   "2014-01-01T02:00:00Z,40,10,1,2,3,4\n"
                   "2014-01-01T03:00:00Z,40,10,1,2,3,4\n");
        CHECK_THROWS_AS(load_wind_field(path, kWholeWorld, kAllOf2014), DataError);
    }
    SUBCASE("non-finite component") {
        const auto path = tmp / "nan.csv";
        write_file(path,
                   "# levels_m: 10 100\n"
                   "time,lat,lon,u_lo,v_lo,u_hi,v_hi\n"
                   "2014-01-01T00:00:00Z,40,10,nan,2,3,4\n");
        CHECK_THROWS_AS(load_wind_field(path, kWholeWorld, kAllOf2014), DataError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_wind_field(tmp / "absent.nc", kWholeWorld, kAllOf2014), DataError);
    }
}

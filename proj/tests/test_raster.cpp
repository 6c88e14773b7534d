#include <doctest.h>

#include "support.hpp"
#include "windsim/errors.hpp"
#include "windsim/raster.hpp"

using namespace windsim;
using test_support::TempDir;
using test_support::write_file;

namespace {

// 3x3 ascii grid, nodata center, height line after the standard header
const char* kAsciiGrid =
    "ncols 3\n"
    "nrows 3\n"
    "xllcorner 20.0\n"
    "yllcorner 44.0\n"
    "cellsize 0.1\n"
    "NODATA_value -9999\n"
    "height_m 100\n"
    "6.1 6.2 6.3\n"
    "6.4 -9999 6.6\n"
    "6.7 6.8 6.9\n";

}  // namespace

TEST_CASE("geotiff fixture: georeferencing and values") {
    const auto raster = load_geotiff_raster(test_support::data_dir() / "gwa_small.tif", 100);
    CHECK(raster.n_rows == 6);
    CHECK(raster.n_cols == 6);
    CHECK(raster.pixel_size == doctest::Approx(0.05));
    CHECK(raster.origin_lat == doctest::Approx(45.0));
    CHECK(raster.origin_lon == doctest::Approx(20.0));
    CHECK(raster.height_m == 100.0);

    // fixture formula: value(r, c) = 5 + 0.1 r + 0.01 c (float32)
    CHECK(sample_raster(raster, 44.875, 20.125) == doctest::Approx(5.22).epsilon(1e-6));
    // pixel centers read their own value
    CHECK(sample_raster(raster, 45.0 - 1.5 * 0.05, 20.0 + 0.5 * 0.05) ==
          doctest::Approx(5.1).epsilon(1e-6));
}

TEST_CASE("geotiff nodata falls back to the nearest valid pixel") {
    const auto raster = load_geotiff_raster(test_support::data_dir() / "gwa_small.tif", 100);
    // (2,3) is nodata; querying its center must land on (1,3), the row-major
    // nearest of the four orthogonal neighbors
    const double lat = 45.0 - 2.5 * 0.05;
    const double lon = 20.0 + 3.5 * 0.05;
    CHECK(raster.is_nodata(2, 3));
    CHECK(sample_raster(raster, lat, lon) == doctest::Approx(5.0 + 0.1 * 1 + 0.01 * 3).epsilon(1e-6));
}

TEST_CASE("geotiff requires an allowed height") {
    CHECK_THROWS_AS(load_geotiff_raster(test_support::data_dir() / "gwa_small.tif", 80), DataError);
}

TEST_CASE("ascii raster loads with its height line") {
    TempDir tmp;
    write_file(tmp / "g.asc", kAsciiGrid);
    const auto raster = load_ascii_raster(tmp / "g.asc");
    CHECK(raster.n_rows == 3);
    CHECK(raster.height_m == 100.0);
    CHECK(raster.origin_lat == doctest::Approx(44.3));

    // direct read at a valid pixel center
    CHECK(sample_raster(raster, 44.25, 20.05) == doctest::Approx(6.1));
    // whole-raster constant case: any in-extent location
    CHECK(sample_raster(raster, 44.01, 20.29) == doctest::Approx(6.9));
}

TEST_CASE("nodata center resolves to the first row-major orthogonal neighbor") {
    TempDir tmp;
    write_file(tmp / "g.asc", kAsciiGrid);
    const auto raster = load_ascii_raster(tmp / "g.asc");
    CHECK(raster.is_nodata(1, 1));
    // query at the exact center: four orthogonal neighbors tie, (0,1) wins
    CHECK(sample_raster(raster, 44.15, 20.15) == doctest::Approx(6.2));
}

TEST_CASE("out of extent and unreachable nodata") {
    TempDir tmp;
    write_file(tmp / "g.asc", kAsciiGrid);
    const auto raster = load_ascii_raster(tmp / "g.asc");
    CHECK_THROWS_AS(sample_raster(raster, 50.0, 20.15), DataError);

    // a raster that is nodata everywhere cannot be sampled
    write_file(tmp / "allnodata.asc",
               "ncols 2\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
               "NODATA_value -1\nheight_m 50\n-1 -1\n");
    const auto empty = load_ascii_raster(tmp / "allnodata.asc");
    CHECK_THROWS_AS(sample_raster(empty, 0.5, 0.5), DataError);
}

TEST_CASE("ascii raster header validation") {
    TempDir tmp;
    write_file(tmp / "noheight.asc",
               "ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\nNODATA_value -1\n5.0\n");
    CHECK_THROWS_AS(load_ascii_raster(tmp / "noheight.asc"), DataError);

    write_file(tmp / "badheight.asc",
               "ncols 1\nnrows 1\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
               "NODATA_value -1\nheight_m 75\n5.0\n");
    CHECK_THROWS_AS(load_ascii_raster(tmp / "badheight.asc"), DataError);

    write_file(tmp / "short.asc",
               "ncols 2\nnrows 2\nxllcorner 0\nyllcorner 0\ncellsize 1\n"
               "NODATA_value -1\nheight_m 50\n1 2 3\n");
    CHECK_THROWS_AS(load_ascii_raster(tmp / "short.asc"), DataError);
}

TEST_CASE("load_raster dispatches by extension and checks height consistency") {
    TempDir tmp;
    write_file(tmp / "g.asc", kAsciiGrid);
    CHECK(load_raster(tmp / "g.asc", std::nullopt).height_m == 100.0);
    CHECK(load_raster(tmp / "g.asc", 100.0).height_m == 100.0);
    CHECK_THROWS_AS(load_raster(tmp / "g.asc", 50.0), DataError);
    CHECK_THROWS_AS(load_raster(test_support::data_dir() / "gwa_small.tif", std::nullopt), DataError);
}

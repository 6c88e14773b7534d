#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "windsim/grid.hpp"
#include "windsim/series.hpp"
#include "windsim/time.hpp"

namespace windsim {

struct BoundingBox {
    double lat_min = -90, lat_max = 90;
    double lon_min = -180, lon_max = 180;

    bool contains(double lat, double lon) const {
        return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
    }
};

/// Closed instant interval [begin, end].
struct TimeRange {
    Instant begin = 0;
    Instant end = 0;
};

enum class WindLevel { lo, hi };

/// Gridded u/v wind components at two heights over a uniform hourly time axis.
/// Arrays are laid out [time][level][lat][lon], level 0 = lo. Immutable after load.
struct WindField {
    Grid grid;
    TimeAxis time;
    double level_lo_m = 10;
    double level_hi_m = 100;
    std::vector<double> u;  // m/s
    std::vector<double> v;  // m/s

    std::size_t value_index(std::size_t t, std::size_t level, std::size_t i_lat, std::size_t i_lon) const {
        return ((t * 2 + level) * grid.n_lat + i_lat) * grid.n_lon + i_lon;
    }
    double u_at(std::size_t t, WindLevel l, GridIndex c) const {
        return u[value_index(t, l == WindLevel::lo ? 0 : 1, c.i_lat, c.i_lon)];
    }
    double v_at(std::size_t t, WindLevel l, GridIndex c) const {
        return v[value_index(t, l == WindLevel::lo ? 0 : 1, c.i_lat, c.i_lon)];
    }
};

/// Loads a wind field from NetCDF (classic format, dimensions time/level/lat/lon,
/// variables u and v in m/s) or from the CSV fixture format
/// (comment "# levels_m: <lo> <hi>", header time,lat,lon,u_lo,v_lo,u_hi,v_hi).
/// Keeps only cells whose centers fall inside bbox and instants inside time_range.
WindField load_wind_field(const std::filesystem::path& path, const BoundingBox& bbox,
                          const TimeRange& time_range);

/// Component time series of one cell at one level; no interpolation.
std::pair<std::vector<double>, std::vector<double>>
extract_series(const WindField& field, GridIndex cell, WindLevel level);

}  // namespace windsim

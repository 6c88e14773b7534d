#pragma once

#include <cstddef>

namespace windsim {

/// Regular lat/lon grid of cell centers, ascending in both axes.
struct Grid {
    double lat_start = 0;
    double lat_step = 1;
    double lon_start = 0;
    double lon_step = 1;
    std::size_t n_lat = 0;
    std::size_t n_lon = 0;

    double lat(std::size_t i) const { return lat_start + static_cast<double>(i) * lat_step; }
    double lon(std::size_t j) const { return lon_start + static_cast<double>(j) * lon_step; }

    void validate() const;  // throws DataError on a degenerate grid

    bool operator==(const Grid&) const = default;
};

struct GridIndex {
    std::size_t i_lat = 0;
    std::size_t i_lon = 0;

    bool operator==(const GridIndex&) const = default;
    bool operator<(const GridIndex& o) const {
        return i_lat != o.i_lat ? i_lat < o.i_lat : i_lon < o.i_lon;
    }
};

/// Index of the cell center closest to (lat, lon) in planar degree distance.
/// Ties break to the smaller i_lat, then the smaller i_lon. Locations more
/// than one cell pitch outside the grid hull are rejected.
GridIndex nearest_cell(const Grid& grid, double lat, double lon);

}  // namespace windsim

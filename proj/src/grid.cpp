#include "windsim/grid.hpp"

#include <cmath>
#include <string>

#include "windsim/errors.hpp"

namespace windsim {

namespace {

// Nearest index along one axis; midpoints resolve to the lower index.
std::size_t nearest_axis_index(double start, double step, std::size_t n, double x) {
    const double pos = (x - start) / step;
    if (pos <= 0) return 0;
    if (pos >= static_cast<double>(n - 1)) return n - 1;
    const double lo = std::floor(pos);
    const auto i = static_cast<std::size_t>(lo);
    const double d_lo = pos - lo;
    const double d_hi = 1.0 - d_lo;
    return (d_lo <= d_hi) ? i : i + 1;
}

}  // namespace

void Grid::validate() const {
    if (!(lat_step > 0) || !(lon_step > 0)) throw DataError("grid steps must be positive");
    if (n_lat < 1 || n_lon < 1) throw DataError("grid must contain at least one cell");
    if (!std::isfinite(lat_start) || !std::isfinite(lon_start))
        throw DataError("grid origin must be finite");
}

GridIndex nearest_cell(const Grid& grid, double lat, double lon) {
    grid.validate();
    if (!std::isfinite(lat) || !std::isfinite(lon))
        throw DataError("nearest_cell: location is not finite");

    const double lat_lo = grid.lat(0) - grid.lat_step;
    const double lat_hi = grid.lat(grid.n_lat - 1) + grid.lat_step;
    const double lon_lo = grid.lon(0) - grid.lon_step;
    const double lon_hi = grid.lon(grid.n_lon - 1) + grid.lon_step;
    if (lat < lat_lo || lat > lat_hi || lon < lon_lo || lon > lon_hi)
        throw DataError("location (" + std::to_string(lat) + ", " + std::to_string(lon) +
                        ") is more than one cell pitch outside the grid");

    // Squared degree distance is separable, so each axis minimizes independently
    // and the lexicographic tie-break carries over.
    return GridIndex{nearest_axis_index(grid.lat_start, grid.lat_step, grid.n_lat, lat),
                     nearest_axis_index(grid.lon_start, grid.lon_step, grid.n_lon, lon)};
}

}  // namespace windsim

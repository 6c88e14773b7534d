#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace windsim {

/// High-resolution long-term mean wind speed layer. origin is the upper-left
/// pixel corner; rows run north to south, pixels are square in degrees.
struct MeanWindRaster {
    double origin_lat = 0;  // latitude of the top edge
    double origin_lon = 0;  // longitude of the left edge
    double pixel_size = 0;  // degrees
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    double height_m = 100;  // 50 or 100
    std::vector<double> values;
    std::vector<std::uint8_t> nodata;

    double value_at(std::size_t row, std::size_t col) const { return values[row * n_cols + col]; }
    bool is_nodata(std::size_t row, std::size_t col) const { return nodata[row * n_cols + col] != 0; }

    void validate() const;  // throws DataError
};

/// Single-band GeoTIFF: band value = mean wind speed in m/s, GDAL nodata tag
/// honored. The measurement height is not stored in the file and must be given.
MeanWindRaster load_geotiff_raster(const std::filesystem::path& path, double height_m);

/// ESRI ASCII grid fixture with one extension: a "height_m <value>" line after
/// the standard six-line header.
MeanWindRaster load_ascii_raster(const std::filesystem::path& path);

MeanWindRaster load_raster(const std::filesystem::path& path, std::optional<double> height_m);

/// Pixel value at a location; nodata pixels fall back to the nearest valid
/// pixel within a 5-pixel radius (row-major tie-break), else a nodata error.
double sample_raster(const MeanWindRaster& raster, double lat, double lon);

}  // namespace windsim

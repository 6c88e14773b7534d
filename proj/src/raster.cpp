#include "windsim/raster.hpp"

#include <tiffio.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "windsim/csv.hpp"
#include "windsim/errors.hpp"

namespace windsim {

namespace {

constexpr std::uint32_t kTagModelPixelScale = 33550;
constexpr std::uint32_t kTagModelTiepoint = 33922;
constexpr std::uint32_t kTagGdalNodata = 42113;
constexpr int kNodataSearchRadius = 5;

const TIFFFieldInfo kGeoFieldInfo[] = {
    {static_cast<ttag_t>(kTagModelPixelScale), -1, -1, TIFF_DOUBLE, FIELD_CUSTOM, 1, 1,
     const_cast<char*>("ModelPixelScaleTag")},
    {static_cast<ttag_t>(kTagModelTiepoint), -1, -1, TIFF_DOUBLE, FIELD_CUSTOM, 1, 1,
     const_cast<char*>("ModelTiepointTag")},
    {static_cast<ttag_t>(kTagGdalNodata), -1, -1, TIFF_ASCII, FIELD_CUSTOM, 1, 0,
     const_cast<char*>("GDAL_NODATA")},
};

TIFFExtendProc g_parent_extender = nullptr;

void geo_tag_extender(TIFF* tif) {
    TIFFMergeFieldInfo(tif, kGeoFieldInfo, sizeof(kGeoFieldInfo) / sizeof(kGeoFieldInfo[0]));
    if (g_parent_extender) g_parent_extender(tif);
}

void install_geo_tags() {
    static bool installed = [] {
        g_parent_extender = TIFFSetTagExtender(geo_tag_extender);
        return true;
    }();
    (void)installed;
}

struct TiffCloser {
    void operator()(TIFF* t) const {
        if (t) TIFFClose(t);
    }
};

void check_allowed_height(double height_m, const std::string& origin) {
    if (height_m != 50.0 && height_m != 100.0)
        throw DataError(origin + ": raster height must be 50 or 100 m, got " + format_double(height_m));
}

}  // namespace

void MeanWindRaster::validate() const {
    if (!(pixel_size > 0)) throw DataError("raster pixel size must be positive");
    if (n_rows == 0 || n_cols == 0) throw DataError("raster is empty");
    if (values.size() != n_rows * n_cols || nodata.size() != values.size())
        throw DataError("raster array sizes are inconsistent");
    check_allowed_height(height_m, "raster");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!nodata[i] && (!std::isfinite(values[i]) || values[i] < 0))
            throw DataError("raster contains an invalid mean wind speed");
}

MeanWindRaster load_geotiff_raster(const std::filesystem::path& path, double height_m) {
    install_geo_tags();
    check_allowed_height(height_m, path.string());

    // suppress libtiff warnings about unknown tags on stderr
    TIFFErrorHandler prev_warn = TIFFSetWarningHandler(nullptr);
    std::unique_ptr<TIFF, TiffCloser> tif(TIFFOpen(path.string().c_str(), "r"));
    TIFFSetWarningHandler(prev_warn);
    if (!tif) throw DataError("cannot open GeoTIFF '" + path.string() + "'");

    std::uint32_t width = 0, length = 0;
    std::uint16_t bits = 0, format = SAMPLEFORMAT_UINT, samples = 1;
    TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &width);
    TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &length);
    TIFFGetField(tif.get(), TIFFTAG_BITSPERSAMPLE, &bits);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLEFORMAT, &format);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLESPERPIXEL, &samples);
    if (width == 0 || length == 0) throw DataError(path.string() + ": empty raster");
    if (samples != 1) throw DataError(path.string() + ": expected a single-band raster");
    if (format != SAMPLEFORMAT_IEEEFP || (bits != 32 && bits != 64))
        throw DataError(path.string() + ": expected float32/float64 samples");
    if (TIFFIsTiled(tif.get())) throw DataError(path.string() + ": tiled GeoTIFF is not supported");

    std::uint16_t count = 0;
    double* scale = nullptr;
    if (!TIFFGetField(tif.get(), kTagModelPixelScale, &count, &scale) || count < 2)
        throw DataError(path.string() + ": missing ModelPixelScale tag");
    const double px = scale[0], py = scale[1];
    if (!(px > 0) || !(py > 0)) throw DataError(path.string() + ": invalid pixel scale");
    if (std::abs(px - py) > 1e-12)
        throw DataError(path.string() + ": pixels must be square in degrees");

    double* tiepoint = nullptr;
    if (!TIFFGetField(tif.get(), kTagModelTiepoint, &count, &tiepoint) || count < 6)
        throw DataError(path.string() + ": missing ModelTiepoint tag");
    // tiepoint maps raster (i, j) to model (x=lon, y=lat)
    const double origin_lon = tiepoint[3] - tiepoint[0] * px;
    const double origin_lat = tiepoint[4] + tiepoint[1] * py;

    std::optional<double> nodata_value;
    char* nodata_text = nullptr;
    if (TIFFGetField(tif.get(), kTagGdalNodata, &nodata_text) && nodata_text)
        nodata_value = std::strtod(nodata_text, nullptr);

    MeanWindRaster raster;
    raster.origin_lat = origin_lat;
    raster.origin_lon = origin_lon;
    raster.pixel_size = px;
    raster.n_rows = length;
    raster.n_cols = width;
    raster.height_m = height_m;
    raster.values.resize(static_cast<std::size_t>(width) * length);
    raster.nodata.assign(raster.values.size(), 0);

    std::vector<unsigned char> scanline(TIFFScanlineSize(tif.get()));
    for (std::uint32_t row = 0; row < length; ++row) {
        if (TIFFReadScanline(tif.get(), scanline.data(), row) < 0)
            throw DataError(path.string() + ": failed to read scanline " + std::to_string(row));
        for (std::uint32_t col = 0; col < width; ++col) {
            double value;
            if (bits == 32) {
                float f;
                std::memcpy(&f, scanline.data() + col * 4, 4);
                value = f;
            } else {
                std::memcpy(&value, scanline.data() + col * 8, 8);
            }
            const std::size_t i = static_cast<std::size_t>(row) * width + col;
            if (std::isnan(value) || (nodata_value && value == *nodata_value)) {
                raster.nodata[i] = 1;
                raster.values[i] = 0;
            } else {
                raster.values[i] = value;
            }
        }
    }
    raster.validate();
    return raster;
}

MeanWindRaster load_ascii_raster(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open raster '" + path.string() + "'");

    MeanWindRaster raster;
    double xllcorner = 0, yllcorner = 0, nodata_value = -9999;
    bool have_height = false;
    long ncols = -1, nrows = -1;

    // header: key value lines until the first numeric row
    std::string key;
    while (in >> key) {
        std::string lowered = key;
        std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (lowered == "ncols") in >> ncols;
        else if (lowered == "nrows") in >> nrows;
        else if (lowered == "xllcorner") in >> xllcorner;
        else if (lowered == "yllcorner") in >> yllcorner;
        else if (lowered == "cellsize") in >> raster.pixel_size;
        else if (lowered == "nodata_value") in >> nodata_value;
        else if (lowered == "height_m") { in >> raster.height_m; have_height = true; }
        else break;
        if (!in) throw DataError(path.string() + ": malformed header near '" + key + "'");
    }
    if (ncols <= 0 || nrows <= 0) throw DataError(path.string() + ": missing ncols/nrows header");
    if (!have_height) throw DataError(path.string() + ": missing 'height_m' header line");

    raster.n_cols = static_cast<std::size_t>(ncols);
    raster.n_rows = static_cast<std::size_t>(nrows);
    raster.origin_lon = xllcorner;
    raster.origin_lat = yllcorner + static_cast<double>(nrows) * raster.pixel_size;
    raster.values.resize(raster.n_rows * raster.n_cols);
    raster.nodata.assign(raster.values.size(), 0);

    // `key` already holds the first data token
    std::size_t i = 0;
    double value = std::strtod(key.c_str(), nullptr);
    raster.values[i] = value;
    if (value == nodata_value) raster.nodata[i] = 1, raster.values[i] = 0;
    ++i;
    for (; i < raster.values.size(); ++i) {
        if (!(in >> value))
            throw DataError(path.string() + ": expected " + std::to_string(raster.values.size()) +
                            " cells, got " + std::to_string(i));
        if (value == nodata_value) {
            raster.nodata[i] = 1;
            raster.values[i] = 0;
        } else {
            raster.values[i] = value;
        }
    }
    raster.validate();
    return raster;
}

MeanWindRaster load_raster(const std::filesystem::path& path, std::optional<double> height_m) {
    const std::string ext = path.extension().string();
    if (ext == ".asc" || ext == ".txt") {
        MeanWindRaster raster = load_ascii_raster(path);
        if (height_m && *height_m != raster.height_m)
            throw DataError(path.string() + ": raster declares height " + format_double(raster.height_m) +
                            " m but " + format_double(*height_m) + " m was requested");
        return raster;
    }
    if (!height_m) throw DataError(path.string() + ": GeoTIFF rasters need an explicit height");
    return load_geotiff_raster(path, *height_m);
}

double sample_raster(const MeanWindRaster& raster, double lat, double lon) {
    if (!(raster.pixel_size > 0) || raster.n_rows == 0 || raster.n_cols == 0)
        throw DataError("sample_raster: degenerate raster");
    const double col_f = (lon - raster.origin_lon) / raster.pixel_size;
    const double row_f = (raster.origin_lat - lat) / raster.pixel_size;
    if (col_f < 0 || row_f < 0 || col_f >= static_cast<double>(raster.n_cols) ||
        row_f >= static_cast<double>(raster.n_rows))
        throw DataError("location (" + format_double(lat) + ", " + format_double(lon) +
                        ") is outside the raster extent");
    const auto row = static_cast<std::size_t>(row_f);
    const auto col = static_cast<std::size_t>(col_f);
    if (!raster.is_nodata(row, col)) return raster.value_at(row, col);

    // nearest valid pixel by distance from the query point, row-major tie-break
    double best_dist = std::numeric_limits<double>::infinity();
    std::size_t best_row = 0, best_col = 0;
    bool found = false;
    const auto r0 = static_cast<long>(row), c0 = static_cast<long>(col);
    for (long dr = -kNodataSearchRadius; dr <= kNodataSearchRadius; ++dr) {
        for (long dc = -kNodataSearchRadius; dc <= kNodataSearchRadius; ++dc) {
            const long r = r0 + dr, c = c0 + dc;
            if (r < 0 || c < 0 || r >= static_cast<long>(raster.n_rows) ||
                c >= static_cast<long>(raster.n_cols))
                continue;
            if (raster.is_nodata(static_cast<std::size_t>(r), static_cast<std::size_t>(c))) continue;
            const double center_row = static_cast<double>(r) + 0.5;
            const double center_col = static_cast<double>(c) + 0.5;
            const double d = (center_row - row_f) * (center_row - row_f) +
                             (center_col - col_f) * (center_col - col_f);
            // ties (up to fp noise) keep the first candidate in row-major order
            if (d < best_dist - 1e-9) {
                best_dist = d;
                best_row = static_cast<std::size_t>(r);
                best_col = static_cast<std::size_t>(c);
                found = true;
            }
        }
    }
    if (!found)
        throw DataError("no valid raster pixel within " + std::to_string(kNodataSearchRadius) +
                        " pixels of (" + format_double(lat) + ", " + format_double(lon) + ")");
    return raster.value_at(best_row, best_col);
}

}  // namespace windsim

#include "windsim/wind_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "netcdf_classic.hpp"
#include "windsim/csv.hpp"
#include "windsim/errors.hpp"

namespace windsim {

namespace {

constexpr double kCoordTolerance = 1e-6;  // degrees
constexpr std::int64_t kHourlyStep = seconds_per_hour;

struct AxisSelection {
    std::size_t first = 0;
    std::size_t count = 0;
};

// Uniform ascending axis from sorted coordinate values.
void check_uniform_axis(const std::vector<double>& coords, const char* what) {
    if (coords.size() < 2) return;
    const double step = coords[1] - coords[0];
    if (!(step > 0)) throw DataError(std::string(what) + " axis is not strictly increasing");
    for (std::size_t i = 1; i < coords.size(); ++i) {
        const double d = coords[i] - coords[i - 1];
        if (std::abs(d - step) > kCoordTolerance)
            throw DataError(std::string(what) + " axis is not uniformly spaced");
    }
}

AxisSelection select_range(const std::vector<double>& coords, double lo, double hi, const char* what) {
    AxisSelection sel;
    bool found = false;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] >= lo && coords[i] <= hi) {
            if (!found) {
                sel.first = i;
                found = true;
            }
            ++sel.count;
        }
    }
    if (!found)
        throw DataError(std::string("empty selection: no ") + what + " inside the requested range");
    return sel;
}

bool is_speed_unit(const std::string& units) {
    return units == "m/s" || units == "m s**-1" || units == "m s-1" || units == "meters per second";
}

std::int64_t time_unit_seconds(const std::string& token) {
    if (token == "seconds" || token == "second" || token == "s") return 1;
    if (token == "minutes" || token == "minute" || token == "min") return 60;
    if (token == "hours" || token == "hour" || token == "h") return 3600;
    if (token == "days" || token == "day" || token == "d") return 86400;
    throw DataError("unsupported time unit '" + token + "'");
}

// "hours since 1900-01-01 00:00:00.0" -> instants
std::vector<Instant> decode_time_axis(const std::vector<double>& raw, const std::string& units) {
    std::istringstream ss(units);
    std::string unit_token, since, date, clock;
    ss >> unit_token >> since >> date;
    if (since != "since") throw DataError("unsupported time units '" + units + "'");
    std::string stamp = date;
    if (ss >> clock) {
        if (auto dot = clock.find('.'); dot != std::string::npos) clock.resize(dot);
        stamp += " " + clock;
    }
    const std::int64_t scale = time_unit_seconds(unit_token);
    const Instant base = parse_instant(stamp);
    std::vector<Instant> out;
    out.reserve(raw.size());
    for (double r : raw) {
        const double seconds = r * static_cast<double>(scale);
        const double rounded = std::round(seconds);
        if (std::abs(seconds - rounded) > 1e-3)
            throw DataError("time axis value is not representable in whole seconds");
        out.push_back(base + static_cast<Instant>(rounded));
    }
    return out;
}

struct TimeSelection {
    std::size_t first = 0;
    std::size_t count = 0;
    Instant start = 0;
};

TimeSelection select_time(const std::vector<Instant>& stamps, const TimeRange& range) {
    if (stamps.empty()) throw DataError("wind field has an empty time axis");
    for (std::size_t i = 1; i < stamps.size(); ++i) {
        if (stamps[i] - stamps[i - 1] != kHourlyStep)
            throw DataError("wind field time axis is not uniform hourly");
    }
    TimeSelection sel;
    bool found = false;
    for (std::size_t i = 0; i < stamps.size(); ++i) {
        if (stamps[i] >= range.begin && stamps[i] <= range.end) {
            if (!found) {
                sel.first = i;
                sel.start = stamps[i];
                found = true;
            }
            ++sel.count;
        }
    }
    if (!found) throw DataError("empty selection: no timestamps inside the requested time range");
    return sel;
}

struct UnpackSpec {
    double scale = 1.0;
    double offset = 0.0;
    std::vector<double> fill_values;  // raw space
};

UnpackSpec unpack_spec(const nc::Variable& var) {
    UnpackSpec spec;
    if (const auto* a = var.attribute("scale_factor"); a && !a->numbers.empty()) spec.scale = a->numbers[0];
    if (const auto* a = var.attribute("add_offset"); a && !a->numbers.empty()) spec.offset = a->numbers[0];
    for (const char* name : {"_FillValue", "missing_value"})
        if (const auto* a = var.attribute(name); a && !a->numbers.empty())
            spec.fill_values.push_back(a->numbers[0]);
    if (const auto* a = var.attribute("units"); a && !is_speed_unit(a->text))
        throw DataError("variable '" + var.name + "' has unsupported units '" + a->text + "'");
    return spec;
}

WindField load_netcdf(const std::filesystem::path& path, const BoundingBox& bbox,
                      const TimeRange& range) {
    nc::File file(path);

    auto coord = [&](std::initializer_list<const char*> names, const char* what) {
        for (const char* n : names)
            if (const auto* v = file.find_variable(n)) return std::make_pair(v, file.read_all(*v));
        throw DataError(path.string() + ": missing " + std::string(what) + " coordinate variable");
    };

    auto [time_var, time_raw] = coord({"time"}, "time");
    auto [lat_var, lat_raw] = coord({"lat", "latitude"}, "latitude");
    auto [lon_var, lon_raw] = coord({"lon", "longitude"}, "longitude");
    auto [level_var, level_raw] = coord({"level", "height"}, "level");

    const auto* units_attr = time_var->attribute("units");
    if (!units_attr) throw DataError(path.string() + ": time variable lacks a units attribute");
    const std::vector<Instant> stamps = decode_time_axis(time_raw, units_attr->text);

    if (level_raw.size() != 2)
        throw DataError(path.string() + ": expected exactly two levels, got " + std::to_string(level_raw.size()));
    std::size_t level_lo_idx = level_raw[0] < level_raw[1] ? 0 : 1;
    const double level_lo = level_raw[level_lo_idx];
    const double level_hi = level_raw[1 - level_lo_idx];
    if (!(level_lo > 0) || !(level_hi > level_lo))
        throw DataError(path.string() + ": level heights must satisfy 0 < lo < hi");

    // latitude may be stored descending; remember the permutation to ascending
    const bool lat_descending = lat_raw.size() >= 2 && lat_raw[1] < lat_raw[0];
    std::vector<double> lat_sorted = lat_raw;
    if (lat_descending) std::reverse(lat_sorted.begin(), lat_sorted.end());
    check_uniform_axis(lat_sorted, "latitude");
    check_uniform_axis(lon_raw, "longitude");

    const AxisSelection lat_sel = select_range(lat_sorted, bbox.lat_min, bbox.lat_max, "latitude cells");
    const AxisSelection lon_sel = select_range(lon_raw, bbox.lon_min, bbox.lon_max, "longitude cells");
    const TimeSelection time_sel = select_time(stamps, range);

    const nc::Variable& u_var = file.require_variable("u");
    const nc::Variable& v_var = file.require_variable("v");

    auto check_shape = [&](const nc::Variable& var) {
        const auto& dims = file.dimensions();
        if (var.dim_ids.size() != 4)
            throw DataError(path.string() + ": variable '" + var.name + "' must have dimensions (time, level, lat, lon)");
        const std::string& d0 = dims[var.dim_ids[0]].name;
        const std::string& d1 = dims[var.dim_ids[1]].name;
        const std::string& d2 = dims[var.dim_ids[2]].name;
        const std::string& d3 = dims[var.dim_ids[3]].name;
        if (d0 != "time" || !(d1 == "level" || d1 == "height") ||
            !(d2 == "lat" || d2 == "latitude") || !(d3 == "lon" || d3 == "longitude"))
            throw DataError(path.string() + ": variable '" + var.name + "' has dimension order (" + d0 +
                            ", " + d1 + ", " + d2 + ", " + d3 + "), expected (time, level, lat, lon)");
    };
    check_shape(u_var);
    check_shape(v_var);

    const std::size_t n_time_file = stamps.size();
    const std::size_t n_lat_file = lat_raw.size();
    const std::size_t n_lon_file = lon_raw.size();

    const std::vector<double> u_raw = file.read_all(u_var);
    const std::vector<double> v_raw = file.read_all(v_var);
    const std::size_t expected = n_time_file * 2 * n_lat_file * n_lon_file;
    if (u_raw.size() != expected || v_raw.size() != expected)
        throw DataError(path.string() + ": u/v array size does not match dimensions");

    const UnpackSpec u_spec = unpack_spec(u_var);
    const UnpackSpec v_spec = unpack_spec(v_var);

    WindField field;
    field.grid = Grid{lat_sorted[lat_sel.first],
                      lat_sorted.size() > 1 ? lat_sorted[1] - lat_sorted[0] : 1.0,
                      lon_raw[lon_sel.first], lon_raw.size() > 1 ? lon_raw[1] - lon_raw[0] : 1.0,
                      lat_sel.count, lon_sel.count};
    field.time = TimeAxis{time_sel.start, kHourlyStep, time_sel.count};
    field.level_lo_m = level_lo;
    field.level_hi_m = level_hi;
    field.u.resize(time_sel.count * 2 * lat_sel.count * lon_sel.count);
    field.v.resize(field.u.size());

    auto source_index = [&](std::size_t t, std::size_t level_sorted, std::size_t i, std::size_t j) {
        // map ascending-lat subset index back to the file's row order
        const std::size_t file_lat_sorted = lat_sel.first + i;
        const std::size_t file_lat = lat_descending ? (n_lat_file - 1 - file_lat_sorted) : file_lat_sorted;
        const std::size_t file_level = (level_sorted == 0) ? level_lo_idx : 1 - level_lo_idx;
        return (((time_sel.first + t) * 2 + file_level) * n_lat_file + file_lat) * n_lon_file +
               (lon_sel.first + j);
    };

    auto unpack = [&](const std::vector<double>& raw, const UnpackSpec& spec, const nc::Variable& var,
                      std::size_t src, std::size_t t) {
        const double r = raw[src];
        for (double fill : spec.fill_values)
            if (r == fill)
                throw DataError(path.string() + ": variable '" + var.name + "' contains fill values at " +
                                format_instant(field.time.at(t)));
        const double value = r * spec.scale + spec.offset;
        if (!std::isfinite(value))
            throw DataError(path.string() + ": variable '" + var.name + "' contains non-finite values");
        return value;
    };

    for (std::size_t t = 0; t < time_sel.count; ++t)
        for (std::size_t l = 0; l < 2; ++l)
            for (std::size_t i = 0; i < lat_sel.count; ++i)
                for (std::size_t j = 0; j < lon_sel.count; ++j) {
                    const std::size_t src = source_index(t, l, i, j);
                    const std::size_t dst = field.value_index(t, l, i, j);
                    field.u[dst] = unpack(u_raw, u_spec, u_var, src, t);
                    field.v[dst] = unpack(v_raw, v_spec, v_var, src, t);
                }
    return field;
}

WindField load_csv_fixture(const std::filesystem::path& path, const BoundingBox& bbox,
                           const TimeRange& range) {
    const CsvTable table = read_csv(path);

    double level_lo = 0, level_hi = 0;
    bool levels_found = false;
    for (const std::string& comment : table.comments) {
        std::istringstream ss(comment);
        std::string hash, key;
        ss >> hash >> key;
        if (key == "levels_m:" && (ss >> level_lo >> level_hi)) levels_found = true;
    }
    if (!levels_found)
        throw DataError(path.string() + ": missing '# levels_m: <lo> <hi>' comment line");
    if (!(level_lo > 0) || !(level_hi > level_lo))
        throw DataError(path.string() + ": level heights must satisfy 0 < lo < hi");

    const std::vector<std::string> expected_header = {"time", "lat", "lon",
                                                      "u_lo", "v_lo", "u_hi", "v_hi"};
    if (table.header != expected_header)
        throw DataError(path.string() + ": fixture header must be time,lat,lon,u_lo,v_lo,u_hi,v_hi");

    struct Sample {
        double u_lo, v_lo, u_hi, v_hi;
    };
    std::set<Instant> time_set;
    std::set<double> lat_set, lon_set;
    std::map<std::tuple<Instant, double, double>, Sample> cells;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string ctx = path.string() + ":" + std::to_string(table.row_lines[r]);
        const Instant t = parse_instant(row[0]);
        const double lat = parse_double(row[1], ctx);
        const double lon = parse_double(row[2], ctx);
        if (!bbox.contains(lat, lon) || t < range.begin || t > range.end) continue;
        Sample s{parse_double(row[3], ctx), parse_double(row[4], ctx),
                 parse_double(row[5], ctx), parse_double(row[6], ctx)};
        for (double x : {s.u_lo, s.v_lo, s.u_hi, s.v_hi})
            if (!std::isfinite(x)) throw DataError(ctx + ": non-finite wind component");
        if (!cells.emplace(std::make_tuple(t, lat, lon), s).second)
            throw DataError(ctx + ": duplicate (time, lat, lon) sample");
        time_set.insert(t);
        lat_set.insert(lat);
        lon_set.insert(lon);
    }
    if (cells.empty())
        throw DataError(path.string() + ": empty selection: no samples inside bbox and time range");

    const std::vector<Instant> stamps(time_set.begin(), time_set.end());
    const std::vector<double> lats(lat_set.begin(), lat_set.end());
    const std::vector<double> lons(lon_set.begin(), lon_set.end());
    for (std::size_t i = 1; i < stamps.size(); ++i)
        if (stamps[i] - stamps[i - 1] != kHourlyStep)
            throw DataError(path.string() + ": time axis is not uniform hourly");
    check_uniform_axis(lats, "latitude");
    check_uniform_axis(lons, "longitude");

    WindField field;
    field.grid = Grid{lats.front(), lats.size() > 1 ? lats[1] - lats[0] : 1.0,
                      lons.front(), lons.size() > 1 ? lons[1] - lons[0] : 1.0,
                      lats.size(), lons.size()};
    field.time = TimeAxis{stamps.front(), kHourlyStep, stamps.size()};
    field.level_lo_m = level_lo;
    field.level_hi_m = level_hi;
    field.u.resize(stamps.size() * 2 * lats.size() * lons.size());
    field.v.resize(field.u.size());

    for (std::size_t t = 0; t < stamps.size(); ++t)
        for (std::size_t i = 0; i < lats.size(); ++i)
            for (std::size_t j = 0; j < lons.size(); ++j) {
                const auto it = cells.find(std::make_tuple(stamps[t], lats[i], lons[j]));
                if (it == cells.end())
                    throw DataError(path.string() + ": incomplete grid, missing sample at " +
                                    format_instant(stamps[t]) + " (" + format_double(lats[i]) + ", " +
                                    format_double(lons[j]) + ")");
                field.u[field.value_index(t, 0, i, j)] = it->second.u_lo;
                field.v[field.value_index(t, 0, i, j)] = it->second.v_lo;
                field.u[field.value_index(t, 1, i, j)] = it->second.u_hi;
                field.v[field.value_index(t, 1, i, j)] = it->second.v_hi;
            }
    return field;
}

}  // namespace

WindField load_wind_field(const std::filesystem::path& path, const BoundingBox& bbox,
                          const TimeRange& time_range) {
    if (!std::filesystem::exists(path)) throw DataError("wind field file '" + path.string() + "' does not exist");
    if (time_range.end < time_range.begin) throw DataError("time range end precedes begin");
    const std::string ext = path.extension().string();
    WindField field = (ext == ".csv" || ext == ".txt")
                          ? load_csv_fixture(path, bbox, time_range)
                          : load_netcdf(path, bbox, time_range);
    field.grid.validate();
    return field;
}

std::pair<std::vector<double>, std::vector<double>>
extract_series(const WindField& field, GridIndex cell, WindLevel level) {
    if (cell.i_lat >= field.grid.n_lat || cell.i_lon >= field.grid.n_lon)
        throw DataError("extract_series: cell index out of range");
    std::vector<double> u(field.time.size), v(field.time.size);
    for (std::size_t t = 0; t < field.time.size; ++t) {
        u[t] = field.u_at(t, level, cell);
        v[t] = field.v_at(t, level, cell);
    }
    return {std::move(u), std::move(v)};
}

}  // namespace windsim

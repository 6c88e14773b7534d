#include "windsim/aggregate.hpp"

#include <map>
#include <set>

#include "windsim/errors.hpp"

namespace windsim {

const char* temporal_level_name(TemporalLevel level) {
    switch (level) {
    case TemporalLevel::hourly: return "hourly";
    case TemporalLevel::daily: return "daily";
    case TemporalLevel::monthly: return "monthly";
    }
    return "?";
}

MaskedSeries to_capacity_factor(const MaskedSeries& gen_kw, std::span<const double> installed_kw) {
    if (installed_kw.size() != gen_kw.size())
        throw DataError("to_capacity_factor: capacity timeline length mismatch");
    MaskedSeries out;
    out.axis = gen_kw.axis;
    out.values.assign(gen_kw.size(), 0.0);
    out.masked = gen_kw.masked;
    for (std::size_t i = 0; i < gen_kw.size(); ++i) {
        if (out.masked[i]) continue;
        if (gen_kw.values[i] < 0)
            throw DataError("to_capacity_factor: negative generation at step " + std::to_string(i));
        if (installed_kw[i] <= 0) {
            out.masked[i] = 1;
            continue;
        }
        out.values[i] = gen_kw.values[i] / installed_kw[i];
    }
    return out;
}

MaskedSeries to_capacity_factor(const GenerationSeries& gen) {
    MaskedSeries kw(gen.axis, gen.power_kw);
    return to_capacity_factor(kw, gen.installed_kw);
}

MaskedSeries aggregate_spatial(std::span<const MaskedSeries> members,
                               std::span<const std::vector<double>> capacities_kw) {
    if (members.empty()) throw DataError("aggregate_spatial: empty member set");
    if (capacities_kw.size() != members.size())
        throw DataError("aggregate_spatial: one capacity timeline per member required");
    const TimeAxis& axis = members.front().axis;
    for (std::size_t m = 0; m < members.size(); ++m) {
        if (members[m].axis != axis) throw DataError("aggregate_spatial: member time axes differ");
        if (capacities_kw[m].size() != axis.size)
            throw DataError("aggregate_spatial: capacity timeline length mismatch");
    }

    MaskedSeries out;
    out.axis = axis;
    out.values.assign(axis.size, 0.0);
    out.masked.assign(axis.size, 0);
    for (std::size_t t = 0; t < axis.size; ++t) {
        double weighted = 0, total_cap = 0;
        for (std::size_t m = 0; m < members.size(); ++m) {
            if (members[m].masked[t]) continue;
            const double cap = capacities_kw[m][t];
            if (cap <= 0) continue;
            weighted += members[m].values[t] * cap;
            total_cap += cap;
        }
        if (total_cap > 0) {
            out.values[t] = weighted / total_cap;
        } else {
            out.masked[t] = 1;
        }
    }
    return out;
}

BucketSeries aggregate_temporal(const MaskedSeries& series, TemporalLevel level) {
    BucketSeries out;
    if (level == TemporalLevel::hourly) {
        out.starts.reserve(series.size());
        for (std::size_t i = 0; i < series.size(); ++i) out.starts.push_back(series.axis.at(i));
        out.values = series.values;
        out.masked = series.masked;
        return out;
    }

    // buckets keyed by calendar ordinal, in axis order
    std::map<std::int64_t, std::pair<double, std::size_t>> buckets;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const Instant t = series.axis.at(i);
        const std::int64_t key = level == TemporalLevel::daily ? day_index(t) : month_index(t);
        auto& [sum, count] = buckets[key];
        if (!series.masked[i]) {
            sum += series.values[i];
            ++count;
        }
    }
    for (const auto& [key, agg] : buckets) {
        out.starts.push_back(level == TemporalLevel::daily ? day_start(key) : month_start(key));
        if (agg.second > 0) {
            out.values.push_back(agg.first / static_cast<double>(agg.second));
            out.masked.push_back(0);
        } else {
            out.values.push_back(0.0);
            out.masked.push_back(1);
        }
    }
    return out;
}

std::size_t system_size(std::span<const Location> locations, const Grid& grid) {
    if (locations.empty()) throw DataError("system_size: empty location list");
    std::set<GridIndex> cells;
    for (const Location& loc : locations) cells.insert(nearest_cell(grid, loc.lat, loc.lon));
    return cells.size();
}

}  // namespace windsim

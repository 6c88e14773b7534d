#pragma once

#include <span>
#include <vector>

#include "windsim/grid.hpp"
#include "windsim/power_model.hpp"
#include "windsim/series.hpp"

namespace windsim {

enum class TemporalLevel { hourly, daily, monthly };

const char* temporal_level_name(TemporalLevel level);

/// cf_t = generation_t / installed_t; steps without capacity are masked.
MaskedSeries to_capacity_factor(const GenerationSeries& gen);
MaskedSeries to_capacity_factor(const MaskedSeries& gen_kw, std::span<const double> installed_kw);

/// Capacity-weighted mean of member capacity factors per timestep — the same
/// number as aggregating generation and normalizing by aggregate capacity.
MaskedSeries aggregate_spatial(std::span<const MaskedSeries> members,
                               std::span<const std::vector<double>> capacities_kw);

/// Mask-aware mean per UTC calendar day or month; a bucket is masked when all
/// of its hours are. Hourly input passes through unchanged (as a one-bucket-per-
/// step BucketSeries).
BucketSeries aggregate_temporal(const MaskedSeries& series, TemporalLevel level);

/// Number of distinct reanalysis grid cells occupied by the locations.
struct Location {
    double lat;
    double lon;
};
std::size_t system_size(std::span<const Location> locations, const Grid& grid);

}  // namespace windsim

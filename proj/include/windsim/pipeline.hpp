#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "windsim/power_model.hpp"
#include "windsim/run_config.hpp"
#include "windsim/series.hpp"

namespace windsim::pipeline {

/// An observed generation series as loaded from one CSV in the observed dir.
/// Missing rows and empty values are masked; the axis is uniform.
struct ObservedSeries {
    std::string name;
    MaskedSeries series;
    bool is_capacity_factor = false;  // header was timestamp,cf
};

ObservedSeries load_observed_csv(const std::filesystem::path& path);

/// Reads one per-record output of the simulate step back in.
GenerationSeries load_generation_csv(const std::filesystem::path& path);

struct SimulateSummary {
    std::size_t records = 0;
    std::vector<std::string> files;      // relative to the output dir, sorted
    std::vector<std::string> warnings;   // e.g. commissioning after the series end
    std::string imputation_summary;      // human-readable per-field imputation counts
};

/// simulate: one generation CSV per fleet record plus manifest.json.
/// Deterministic: fixed config and inputs give byte-identical outputs for any
/// worker count.
SimulateSummary run_simulate(const RunConfig& config);

struct CleanSummary {
    std::size_t total_series = 0;
    std::size_t surviving_series = 0;
    /// rule name -> number of series the rule fired on, pipeline order
    std::vector<std::pair<std::string, std::size_t>> rule_series_counts;
};

/// clean: per-series cleaned CSVs under cleaned/, rule reports under reports/,
/// attrition summary in cleaning_summary.csv.
CleanSummary run_clean(const RunConfig& config);

struct ValidateSummary {
    std::size_t metric_rows = 0;
    std::size_t groups = 0;
    std::vector<std::string> warnings;
};

/// validate: metrics.csv and boxplot_stats.csv over the
/// (region x dataset x correction x temporal level) grid.
ValidateSummary run_validate(const RunConfig& config);

/// capacity-check: per-year cumulative fleet capacity vs. a reference table
/// (CSV: year,capacity_mw). Mismatched years are flagged rows, not errors.
void run_capacity_check(const std::filesystem::path& fleet_csv,
                        const std::filesystem::path& reference_csv,
                        const std::filesystem::path& output_csv);

/// report: regroups a metrics.csv into system-size bands with boxplot stats
/// (banded_boxplot_stats.csv) and a plain-text summary.
void run_report(const std::filesystem::path& metrics_csv,
                const std::filesystem::path& output_dir,
                double notch_constant = 1.57);

}  // namespace windsim::pipeline

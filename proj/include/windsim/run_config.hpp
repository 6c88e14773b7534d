#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "windsim/time.hpp"
#include "windsim/wind_field.hpp"

namespace windsim {

struct CorrectionConfig {
    std::string tag = "none";  // none | gwa2 | gwa3
    std::filesystem::path raster;
    std::optional<double> height_m;  // defaults from the dataset tag
};

struct Thresholds {
    double zero_run_hours = 180;
    double constant_run_hours = 24;
    double min_years = 2;
    double sp_floor_w_m2 = 100;
    double notch_constant = 1.57;
};

/// Declarative run configuration shared by the CLI subcommands.
struct RunConfig {
    std::string dataset = "fixture";  // era5 | merra2 | fixture
    std::filesystem::path wind_field;
    std::filesystem::path fleet;
    std::filesystem::path observed_dir;
    std::filesystem::path exclusions;  // optional
    CorrectionConfig correction;
    TimeRange time_range;
    std::optional<BoundingBox> bbox;  // defaults to the whole file extent
    std::filesystem::path output_dir;
    std::vector<std::filesystem::path> sim_runs;  // simulate output dirs (validate)
    std::filesystem::path cleaned_dir;            // clean output dir (validate)
    Thresholds thresholds;
    std::uint64_t seed = 42;
    bool audit = false;  // emit before/after series from the cleaning step

    /// Canonical-form hash; changes iff any config field changes.
    std::string config_hash() const;

    /// Reference height for the bias-correction raster: explicit value if
    /// given, else 50 m for merra2 and 100 m otherwise.
    double correction_height_m() const;

    void validate_for_simulate() const;  // referenced paths must exist, etc.
    void validate_for_clean() const;
    void validate_for_validate() const;
};

RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir);

/// Worker count: WINDSIM_WORKERS env var when set, else hardware concurrency
/// clamped to [1, 8].
std::size_t worker_count();

}  // namespace windsim

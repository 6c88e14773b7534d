#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "windsim/time.hpp"

namespace windsim {

enum class DatePrecision { day, month, year };

struct Commissioning {
    int year = 1970;
    unsigned month = 1;  // meaningful for day/month precision
    unsigned day = 1;    // meaningful for day precision
    DatePrecision precision = DatePrecision::day;

    /// Instant at which a day/month precision record switches on
    /// (month precision uses the 15th of the month).
    Instant step_instant() const;
};

/// One turbine or wind park. Attribute fields are optional until imputation;
/// after impute + repair every field is present and the invariants hold
/// (positive capacity/heights, specific power >= 100 W/m²).
struct FleetRecord {
    std::string id;
    std::string name;
    double lat = 0;
    double lon = 0;
    std::optional<double> capacity_kw;
    std::optional<double> hub_height_m;
    std::optional<double> rotor_diameter_m;
    std::optional<Commissioning> commissioning;
    std::string state;
    std::string country;

    bool complete() const {
        return capacity_kw && hub_height_m && rotor_diameter_m && commissioning;
    }
};

struct FieldImputation {
    std::string field;
    std::size_t count = 0;
    std::string method;
};

struct ImputationReport {
    std::vector<FieldImputation> fields;

    std::size_t total() const {
        std::size_t n = 0;
        for (const auto& f : fields) n += f.count;
        return n;
    }
};

struct Fleet {
    std::vector<FleetRecord> records;
    ImputationReport missing_on_load;  // per-field counts of flagged (not yet imputed) values
};

/// Fleet CSV, schema v1 header:
/// id,name,lat,lon,capacity_kw,hub_height_m,rotor_diameter_m,commissioning,commissioning_precision,state,country
/// Empty or non-positive numeric fields are flagged missing, not imputed here.
Fleet load_fleet(const std::filesystem::path& path);

struct ImputationPolicy {
    bool capacity = true;
    bool hub_height = true;
    bool rotor_diameter = true;
    bool commissioning = true;
};

/// Fills missing attributes: capacity and hub height from the mean of records
/// commissioned the same year (overall mean fallback), commissioning from the
/// overall mean year, rotor diameter from an OLS fit on hub height.
ImputationReport impute_missing(std::vector<FleetRecord>& records,
                                const ImputationPolicy& policy = {});

/// Records whose specific power falls below the floor get their rotor diameter
/// recomputed from the mean specific power of same-capacity records
/// (nearest capacity within ±10%, then global mean).
std::size_t repair_specific_power(std::vector<FleetRecord>& records, double floor_w_m2 = 100.0);

/// Capacity per rotor swept area in W/m².
double specific_power_of(const FleetRecord& record);

struct NameMatch {
    std::size_t sim_index;
    std::size_t obs_index;
    int score;  // always 100: exact equality after normalization
};

/// Case-folds, strips accents and non-alphanumerics. Two names match (score
/// 100) iff their normalized forms are equal.
std::string normalize_name(const std::string& name);

/// Returns the one-to-one score-100 pairs; ambiguous matches are an error.
std::vector<NameMatch> match_names(const std::vector<std::string>& sim_names,
                                   const std::vector<std::string>& obs_names);

/// Sweeps the post-repair invariants; throws DataError naming the first violation.
void check_fleet_invariants(const std::vector<FleetRecord>& records, double sp_floor_w_m2 = 100.0);

}  // namespace windsim

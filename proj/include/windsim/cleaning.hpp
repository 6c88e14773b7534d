#pragma once

#include <span>
#include <string>
#include <vector>

#include "windsim/series.hpp"

namespace windsim {

/// Half-open index interval [begin, end) of steps masked by one rule firing.
struct MaskedInterval {
    std::size_t begin = 0;
    std::size_t end = 0;
};

struct RemovalLogEntry {
    std::string rule;
    std::size_t steps_masked = 0;
    std::vector<MaskedInterval> intervals;
};

/// Exhaustive record of what each rule removed; the per-rule counts sum to the
/// total number of steps masked by the pipeline (no silent masking).
struct RemovalLog {
    std::vector<RemovalLogEntry> entries;

    std::size_t total_masked() const {
        std::size_t n = 0;
        for (const auto& e : entries) n += e.steps_masked;
        return n;
    }
};

struct CleaningOptions {
    std::size_t constant_run_steps = 24;   // runs longer than this are removed
    std::size_t zero_run_steps = 180;      // zero runs longer than this are removed
    double min_years = 2.0;                // series shorter than this are dropped
    int round_decimals = 3;                // "constant" compares values rounded this far
    bool apply_cf_rule = true;             // false when no capacity is known for a kW series
};

/// Observed values are compared after rounding to `decimals` places so float
/// noise in source CSVs does not break run detection.
std::int64_t rounded_key(double value, int decimals);

void trim_edge_zeros(MaskedSeries& series, RemovalLog& log, int round_decimals = 3);
void remove_constant_runs(MaskedSeries& series, RemovalLog& log, std::size_t min_len_steps = 24,
                          int round_decimals = 3);
void remove_zero_runs(MaskedSeries& series, RemovalLog& log, std::size_t min_len_steps = 180,
                      int round_decimals = 3);

/// Masks steps whose value exceeds the installed capacity (strict inequality).
/// Steps with zero capacity but nonzero generation are masked under a separate rule.
void remove_cf_above_one(MaskedSeries& series, std::span<const double> installed_kw,
                         RemovalLog& log);

/// Keep iff unmasked steps amount to at least `min_years` (non-consecutive counting).
bool enforce_min_length(const MaskedSeries& series, double min_years = 2.0);

/// Linearly interpolates masked gaps of at most `max_gap_steps` that are
/// bounded by unmasked values; longer and edge gaps stay masked.
void interpolate_short_gaps(MaskedSeries& series, std::size_t max_gap_steps, RemovalLog& log);

/// Masks, in every member of an aggregation group, each timestep that is
/// masked in any observed member. All axes must be identical.
void align_and_mask(std::span<MaskedSeries> simulated, std::span<MaskedSeries> observed);

/// Mean of unmasked sub-steps per bucket of `factor` steps; a bucket with any
/// masked sub-step is masked. Used to bring sub-hourly observations to hourly.
MaskedSeries aggregate_to_hourly(const MaskedSeries& series);

struct CleanResult {
    MaskedSeries series;
    RemovalLog log;
    bool keep = true;  // false when the 2-year rule drops the series
};

/// Ordered pipeline: trim edge zeros, constant runs, zero runs, capacity-factor
/// filter, minimum-length verdict. `installed_kw` may be empty when the values
/// are already capacity factors (capacity 1 is assumed).
CleanResult clean_series(MaskedSeries series, std::span<const double> installed_kw,
                         const CleaningOptions& options = {});

}  // namespace windsim

#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "windsim/series.hpp"

namespace windsim {

/// Validation statistics over the jointly unmasked steps of one
/// (simulated, observed) pair. Sign convention: mbe = mean(simulated - observed),
/// so positive mbe means the simulation overestimates.
struct ValidationMetrics {
    std::optional<double> pearson_r;  // undefined when either side has zero variance
    double rmse = 0;
    double mbe = 0;
    std::size_t n = 0;
};

/// Notch interval of a boxplot median: M ± 1.57 * IQR / sqrt(n).
/// Quantiles use linear interpolation between order statistics.
struct NotchInterval {
    double median = 0;
    double iqr = 0;
    std::size_t n = 0;
    double lo = 0;
    double hi = 0;
};

inline constexpr double default_notch_constant = 1.57;

/// Quantile with linear interpolation between order statistics
/// (h = (n - 1) * p). `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);

double pearson_or_throw(SeriesView sim, SeriesView obs);  // throws DataError on zero variance
std::optional<double> pearson(SeriesView sim, SeriesView obs);
double rmse(SeriesView sim, SeriesView obs);
double mbe(SeriesView sim, SeriesView obs);

ValidationMetrics validate_pair(SeriesView sim, SeriesView obs);

NotchInterval notch_interval(std::span<const double> samples,
                             double notch_constant = default_notch_constant);

/// True iff the notch intervals of the two sample sets do not overlap
/// (median difference significant at the 5% level).
bool medians_differ(std::span<const double> a, std::span<const double> b,
                    double notch_constant = default_notch_constant);

}  // namespace windsim

#include "windsim/bias_correction.hpp"

#include <cmath>

#include "windsim/csv.hpp"
#include "windsim/errors.hpp"

namespace windsim {

CorrectionFactor correction_factor(double gwa_mean_ms, std::span<const double> reanalysis_series_ms,
                                   double gwa_height_m, double series_height_m) {
    if (gwa_height_m != series_height_m)
        throw DataError("correction height mismatch: raster is at " + format_double(gwa_height_m) +
                        " m, series at " + format_double(series_height_m) + " m");
    if (reanalysis_series_ms.empty())
        throw DataError("correction_factor: empty reanalysis series");
    if (!(gwa_mean_ms > 0) || !std::isfinite(gwa_mean_ms))
        throw DataError("correction_factor: atlas mean must be positive");

    long double sum = 0;
    for (double v : reanalysis_series_ms) sum += v;
    const double mean = static_cast<double>(sum / static_cast<long double>(reanalysis_series_ms.size()));
    if (!(mean > 0))
        throw DataError("correction_factor: degenerate reanalysis series (non-positive mean)");

    return CorrectionFactor{gwa_mean_ms / mean, gwa_mean_ms, mean};
}

std::vector<double> apply_correction(std::span<const double> hub_series_ms,
                                     const CorrectionFactor& cf) {
    if (!(cf.factor > 0)) throw DataError("apply_correction: factor must be positive");
    std::vector<double> out(hub_series_ms.begin(), hub_series_ms.end());
    for (double& v : out) v *= cf.factor;
    return out;
}

}  // namespace windsim

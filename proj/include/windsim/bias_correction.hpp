#pragma once

#include <span>
#include <vector>

namespace windsim {

/// Ratio of the high-resolution long-term mean to the reanalysis series mean
/// at the same height. Multiplying a wind-speed series by `factor` shifts its
/// mean onto the atlas value without changing its shape.
struct CorrectionFactor {
    double factor = 1.0;
    double gwa_mean = 0.0;
    double reanalysis_mean = 0.0;
};

/// Builds the correction factor. Both heights are required so that mixing a
/// 50 m raster with a 100 m series is rejected.
CorrectionFactor correction_factor(double gwa_mean_ms, std::span<const double> reanalysis_series_ms,
                                   double gwa_height_m, double series_height_m);

/// Every element multiplied by the factor; masks (if any) are untouched by design
/// since only values are passed here.
std::vector<double> apply_correction(std::span<const double> hub_series_ms,
                                     const CorrectionFactor& cf);

}  // namespace windsim

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "windsim/bias_correction.hpp"
#include "windsim/fleet.hpp"
#include "windsim/raster.hpp"
#include "windsim/series.hpp"
#include "windsim/wind_field.hpp"

namespace windsim {

/// Empirical power curve driven solely by specific power. Between cut-in and
/// rated speed the normalized output follows (v³ - cut_in³) / (rated³ - cut_in³);
/// rated speed is where a reference-efficiency rotor (Cp 0.45, rho 1.225 kg/m³)
/// reaches the machine's specific power.
struct PowerCurve {
    double specific_power_w_m2 = 0;
    double cut_in_ms = 3.5;
    double rated_ms = 0;
    double cut_out_ms = 25.0;

    /// Normalized output in [0, 1]; zero below cut-in and at/after cut-out.
    double normalized(double v_ms) const;
};

inline constexpr double power_curve_cut_in_ms = 3.5;
inline constexpr double power_curve_cut_out_ms = 25.0;
inline constexpr double air_density_kg_m3 = 1.225;
inline constexpr double reference_cp = 0.45;

/// 1000 * capacity / (pi * (diameter/2)²), in W/m².
double specific_power(double capacity_kw, double rotor_diameter_m);

/// Throws DataError when sp < 100 (the fleet repair floor) or so large that the
/// rated speed would reach cut-out.
PowerCurve build_power_curve(double sp_w_m2);

double power_output(const PowerCurve& curve, double v_hub_ms, double installed_kw);

/// Installed capacity per timestep. Day/month precision: step function at the
/// commissioning instant. Year precision: linear ramp across that calendar year.
struct CapacityTimeline {
    TimeAxis axis;
    std::vector<double> installed_kw;
    bool commissioned_after_end = false;  // all-zero timeline, flagged for a warning
};

CapacityTimeline capacity_timeline(const FleetRecord& record, const TimeAxis& axis);

namespace gen_flags {
inline constexpr std::uint8_t alpha_fallback = 1;  // shear fell back to the neutral exponent
inline constexpr std::uint8_t alpha_clamped = 2;   // shear exponent clamped to its bounds
}  // namespace gen_flags

/// Simulated power for one record, with provenance tags.
struct GenerationSeries {
    std::string record_id;
    TimeAxis axis;
    std::vector<double> power_kw;
    std::vector<double> installed_kw;
    std::vector<std::uint8_t> flags;
    std::string dataset_tag;
    std::string gwa_tag;                         // empty = no bias correction
    std::optional<CorrectionFactor> correction;  // set when a raster was applied
};

struct SimulateOptions {
    const MeanWindRaster* raster = nullptr;  // non-null enables mean bias correction
    std::string dataset_tag = "fixture";
    std::string gwa_tag;
};

/// Full per-location chain: nearest cell -> component series -> effective
/// speeds -> shear exponent -> hub-height extrapolation -> optional mean bias
/// correction -> power curve scaled by the capacity timeline.
GenerationSeries simulate_location(const FleetRecord& record, const WindField& field,
                                   const SimulateOptions& options);

}  // namespace windsim

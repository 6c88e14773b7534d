#include "windsim/power_model.hpp"

#include <cmath>
#include <numbers>

#include "windsim/bias_correction.hpp"
#include "windsim/csv.hpp"
#include "windsim/errors.hpp"
#include "windsim/wind_math.hpp"

namespace windsim {

double PowerCurve::normalized(double v_ms) const {
    if (v_ms < cut_in_ms || v_ms >= cut_out_ms) return 0.0;
    if (v_ms >= rated_ms) return 1.0;
    const double v3 = v_ms * v_ms * v_ms;
    const double ci3 = cut_in_ms * cut_in_ms * cut_in_ms;
    const double r3 = rated_ms * rated_ms * rated_ms;
    return (v3 - ci3) / (r3 - ci3);
}

double specific_power(double capacity_kw, double rotor_diameter_m) {
    if (!(capacity_kw > 0) || !(rotor_diameter_m > 0))
        throw DataError("specific_power: capacity and diameter must be positive");
    const double radius = rotor_diameter_m / 2.0;
    return 1000.0 * capacity_kw / (std::numbers::pi * radius * radius);
}

PowerCurve build_power_curve(double sp_w_m2) {
    if (!(sp_w_m2 >= 100.0))
        throw DataError("build_power_curve: specific power " + format_double(sp_w_m2) +
                        " W/m² is below 100 (fleet repair should have prevented this)");
    PowerCurve curve;
    curve.specific_power_w_m2 = sp_w_m2;
    curve.cut_in_ms = power_curve_cut_in_ms;
    curve.cut_out_ms = power_curve_cut_out_ms;
    curve.rated_ms = std::cbrt(2.0 * sp_w_m2 / (air_density_kg_m3 * reference_cp));
    if (!(curve.rated_ms > curve.cut_in_ms) || !(curve.rated_ms < curve.cut_out_ms))
        throw DataError("build_power_curve: specific power " + format_double(sp_w_m2) +
                        " W/m² yields a rated speed outside (cut-in, cut-out)");
    return curve;
}

double power_output(const PowerCurve& curve, double v_hub_ms, double installed_kw) {
    if (!(v_hub_ms >= 0)) throw DataError("power_output: negative hub-height speed");
    if (!(installed_kw >= 0)) throw DataError("power_output: negative installed capacity");
    return installed_kw * curve.normalized(v_hub_ms);
}

CapacityTimeline capacity_timeline(const FleetRecord& record, const TimeAxis& axis) {
    if (!record.commissioning)
        throw DataError("capacity_timeline: record " + record.id + " lacks a commissioning date");
    if (!record.capacity_kw)
        throw DataError("capacity_timeline: record " + record.id + " lacks a capacity");
    const double capacity = *record.capacity_kw;
    const Commissioning& comm = *record.commissioning;

    CapacityTimeline out;
    out.axis = axis;
    out.installed_kw.assign(axis.size, 0.0);

    if (comm.precision == DatePrecision::year) {
        const Instant ramp_start = year_start(comm.year);
        const Instant ramp_end = year_start(comm.year + 1);
        const auto span = static_cast<double>(ramp_end - ramp_start);
        for (std::size_t i = 0; i < axis.size; ++i) {
            const Instant t = axis.at(i);
            if (t < ramp_start) continue;
            out.installed_kw[i] =
                (t >= ramp_end) ? capacity
                                : capacity * static_cast<double>(t - ramp_start) / span;
        }
        out.commissioned_after_end = axis.size > 0 && ramp_start > axis.last();
        return out;
    }

    const Instant step = comm.step_instant();
    for (std::size_t i = 0; i < axis.size; ++i)
        if (axis.at(i) >= step) out.installed_kw[i] = capacity;
    out.commissioned_after_end = axis.size > 0 && step > axis.last();
    return out;
}

GenerationSeries simulate_location(const FleetRecord& record, const WindField& field,
                                   const SimulateOptions& options) {
    try {
        if (!record.complete())
            throw DataError("record is incomplete; run imputation and repair first");

        const GridIndex cell = nearest_cell(field.grid, record.lat, record.lon);
        const auto [u_lo, v_lo] = extract_series(field, cell, WindLevel::lo);
        const auto [u_hi, v_hi] = extract_series(field, cell, WindLevel::hi);
        const HeightPair heights{field.level_lo_m, field.level_hi_m};

        const std::size_t n = field.time.size;
        std::vector<double> hub_speed(n);
        std::vector<std::uint8_t> flags(n, 0);
        std::vector<double> eff_hi(n);
        for (std::size_t t = 0; t < n; ++t) {
            const double lo = effective_speed(u_lo[t], v_lo[t]);
            const double hi = effective_speed(u_hi[t], v_hi[t]);
            eff_hi[t] = hi;
            const ShearExponent shear = hellmann_exponent(lo, hi, heights);
            if (shear.fallback) flags[t] |= gen_flags::alpha_fallback;
            if (shear.clamped) flags[t] |= gen_flags::alpha_clamped;
            // hub extrapolation is anchored at the upper level (closer to hub height)
            hub_speed[t] = extrapolate_to_hub(hi, heights.hi_m, shear.alpha, *record.hub_height_m);
        }

        std::optional<CorrectionFactor> correction;
        if (options.raster) {
            const double gwa_mean = sample_raster(*options.raster, record.lat, record.lon);
            correction = correction_factor(gwa_mean, eff_hi, options.raster->height_m, heights.hi_m);
            hub_speed = apply_correction(hub_speed, *correction);
        }

        const PowerCurve curve =
            build_power_curve(specific_power(*record.capacity_kw, *record.rotor_diameter_m));
        const CapacityTimeline cap = capacity_timeline(record, field.time);

        GenerationSeries out;
        out.record_id = record.id;
        out.axis = field.time;
        out.power_kw.resize(n);
        out.installed_kw = cap.installed_kw;
        out.flags = std::move(flags);
        out.dataset_tag = options.dataset_tag;
        out.gwa_tag = options.gwa_tag;
        out.correction = correction;
        for (std::size_t t = 0; t < n; ++t)
            out.power_kw[t] = power_output(curve, hub_speed[t], out.installed_kw[t]);
        return out;
    } catch (const DataError& e) {
        throw DataError("record " + record.id + ": " + e.what());
    }
}

}  // namespace windsim

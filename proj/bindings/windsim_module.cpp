#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>
#include <vector>

#include "windsim/aggregate.hpp"
#include "windsim/bias_correction.hpp"
#include "windsim/cleaning.hpp"
#include "windsim/errors.hpp"
#include "windsim/grid.hpp"
#include "windsim/pipeline.hpp"
#include "windsim/power_model.hpp"
#include "windsim/run_config.hpp"
#include "windsim/stats.hpp"
#include "windsim/wind_math.hpp"

namespace py = pybind11;
using namespace windsim;

namespace {

std::vector<std::uint8_t> mask_or_default(const std::optional<std::vector<bool>>& mask, std::size_t n) {
    std::vector<std::uint8_t> out(n, 0);
    if (!mask) return out;
    if (mask->size() != n) throw DataError("mask length does not match the series");
    for (std::size_t i = 0; i < n; ++i) out[i] = (*mask)[i] ? 1 : 0;
    return out;
}

// binds a statistics function over (values, optional mask) pairs
template <typename Fn>
auto stat_wrapper(Fn fn) {
    return [fn](const std::vector<double>& sim, const std::vector<double>& obs,
                const std::optional<std::vector<bool>>& sim_mask,
                const std::optional<std::vector<bool>>& obs_mask) {
        const auto m_sim = mask_or_default(sim_mask, sim.size());
        const auto m_obs = mask_or_default(obs_mask, obs.size());
        return fn(SeriesView{sim, m_sim}, SeriesView{obs, m_obs});
    };
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "wind power simulation and validation engine";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    // wind math
    py::class_<ShearExponent>(m, "ShearExponent")
        .def_readonly("alpha", &ShearExponent::alpha)
        .def_readonly("fallback", &ShearExponent::fallback)
        .def_readonly("clamped", &ShearExponent::clamped);
    m.def("effective_speed", &effective_speed, py::arg("u"), py::arg("v"));
    m.def(
        "hellmann_exponent",
        [](double v_lo, double v_hi, double h_lo, double h_hi) {
            return hellmann_exponent(v_lo, v_hi, HeightPair{h_lo, h_hi});
        },
        py::arg("v_lo"), py::arg("v_hi"), py::arg("h_lo"), py::arg("h_hi"));
    m.def("extrapolate_to_hub", &extrapolate_to_hub, py::arg("v_ref"), py::arg("h_ref"),
          py::arg("alpha"), py::arg("hub"));

    // power curve
    py::class_<PowerCurve>(m, "PowerCurve")
        .def_readonly("specific_power_w_m2", &PowerCurve::specific_power_w_m2)
        .def_readonly("cut_in_ms", &PowerCurve::cut_in_ms)
        .def_readonly("rated_ms", &PowerCurve::rated_ms)
        .def_readonly("cut_out_ms", &PowerCurve::cut_out_ms)
        .def("normalized", &PowerCurve::normalized, py::arg("v"));
    m.def("specific_power", &specific_power, py::arg("capacity_kw"), py::arg("rotor_diameter_m"));
    m.def("build_power_curve", &build_power_curve, py::arg("specific_power_w_m2"));
    m.def("power_output", &power_output, py::arg("curve"), py::arg("v_hub"), py::arg("installed_kw"));

    // bias correction
    py::class_<CorrectionFactor>(m, "CorrectionFactor")
        .def_readonly("factor", &CorrectionFactor::factor)
        .def_readonly("gwa_mean", &CorrectionFactor::gwa_mean)
        .def_readonly("reanalysis_mean", &CorrectionFactor::reanalysis_mean);
    m.def(
        "correction_factor",
        [](double gwa_mean, const std::vector<double>& series, double gwa_height, double series_height) {
            return correction_factor(gwa_mean, series, gwa_height, series_height);
        },
        py::arg("gwa_mean"), py::arg("series"), py::arg("gwa_height_m"), py::arg("series_height_m"));
    m.def(
        "apply_correction",
        [](const std::vector<double>& series, const CorrectionFactor& cf) {
            return apply_correction(series, cf);
        },
        py::arg("series"), py::arg("cf"));

    // grid
    m.def(
        "nearest_cell",
        [](double lat_start, double lat_step, double lon_start, double lon_step, std::size_t n_lat,
           std::size_t n_lon, double lat, double lon) {
            const GridIndex c =
                nearest_cell(Grid{lat_start, lat_step, lon_start, lon_step, n_lat, n_lon}, lat, lon);
            return py::make_tuple(c.i_lat, c.i_lon);
        },
        py::arg("lat_start"), py::arg("lat_step"), py::arg("lon_start"), py::arg("lon_step"),
        py::arg("n_lat"), py::arg("n_lon"), py::arg("lat"), py::arg("lon"));

    // statistics
    m.def("pearson", stat_wrapper([](SeriesView a, SeriesView b) { return pearson(a, b); }),
          py::arg("sim"), py::arg("obs"), py::arg("sim_mask") = std::nullopt,
          py::arg("obs_mask") = std::nullopt);
    m.def("rmse", stat_wrapper([](SeriesView a, SeriesView b) { return rmse(a, b); }), py::arg("sim"),
          py::arg("obs"), py::arg("sim_mask") = std::nullopt, py::arg("obs_mask") = std::nullopt);
    m.def("mbe", stat_wrapper([](SeriesView a, SeriesView b) { return mbe(a, b); }), py::arg("sim"),
          py::arg("obs"), py::arg("sim_mask") = std::nullopt, py::arg("obs_mask") = std::nullopt);

    py::class_<NotchInterval>(m, "NotchInterval")
        .def_readonly("median", &NotchInterval::median)
        .def_readonly("iqr", &NotchInterval::iqr)
        .def_readonly("n", &NotchInterval::n)
        .def_readonly("lo", &NotchInterval::lo)
        .def_readonly("hi", &NotchInterval::hi);
    m.def(
        "notch_interval",
        [](const std::vector<double>& samples, double notch_constant) {
            return notch_interval(samples, notch_constant);
        },
        py::arg("samples"), py::arg("notch_constant") = default_notch_constant);
    m.def(
        "medians_differ",
        [](const std::vector<double>& a, const std::vector<double>& b, double notch_constant) {
            return medians_differ(a, b, notch_constant);
        },
        py::arg("a"), py::arg("b"), py::arg("notch_constant") = default_notch_constant);

    // cleaning masks over hourly value arrays
    m.def(
        "mask_constant_runs",
        [](const std::vector<double>& values, std::size_t min_len) {
            MaskedSeries s(TimeAxis{0, seconds_per_hour, values.size()}, values);
            RemovalLog log;
            remove_constant_runs(s, log, min_len);
            return std::vector<bool>(s.masked.begin(), s.masked.end());
        },
        py::arg("values"), py::arg("min_len") = 24);
    m.def(
        "mask_zero_runs",
        [](const std::vector<double>& values, std::size_t min_len) {
            MaskedSeries s(TimeAxis{0, seconds_per_hour, values.size()}, values);
            RemovalLog log;
            remove_zero_runs(s, log, min_len);
            return std::vector<bool>(s.masked.begin(), s.masked.end());
        },
        py::arg("values"), py::arg("min_len") = 180);

    // pipeline entry points
    m.def(
        "simulate",
        [](const std::filesystem::path& config) {
            const auto summary = pipeline::run_simulate(load_run_config(config));
            return py::make_tuple(summary.records, summary.files);
        },
        py::arg("config"), "run the simulate step from a config file");
    m.def(
        "clean",
        [](const std::filesystem::path& config) {
            const auto summary = pipeline::run_clean(load_run_config(config));
            return py::make_tuple(summary.total_series, summary.surviving_series);
        },
        py::arg("config"), "run the cleaning step from a config file");
    m.def(
        "validate",
        [](const std::filesystem::path& config) {
            const auto summary = pipeline::run_validate(load_run_config(config));
            return py::make_tuple(summary.metric_rows, summary.groups);
        },
        py::arg("config"), "run the validation step from a config file");
    m.def("capacity_check", &pipeline::run_capacity_check, py::arg("fleet_csv"),
          py::arg("reference_csv"), py::arg("output_csv"));
    m.def("report", &pipeline::run_report, py::arg("metrics_csv"), py::arg("output_dir"),
          py::arg("notch_constant") = default_notch_constant);
}

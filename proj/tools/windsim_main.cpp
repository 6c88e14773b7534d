#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "windsim/errors.hpp"
#include "windsim/stats.hpp"
#include "windsim/pipeline.hpp"
#include "windsim/run_config.hpp"

namespace {

int dispatch(int argc, char** argv) {
    CLI::App app{"wind power simulation and validation engine"};
    app.require_subcommand(1);

    std::string config_path;
    std::string fleet_path, reference_path, output_path;
    std::string metrics_path, report_dir;
    double notch_constant = windsim::default_notch_constant;

    auto* simulate = app.add_subcommand("simulate", "simulate generation for every fleet record");
    simulate->add_option("-c,--config", config_path, "run configuration JSON")->required();

    bool audit = false;
    auto* clean = app.add_subcommand("clean", "quality-control observed generation series");
    clean->add_option("-c,--config", config_path, "run configuration JSON")->required();
    clean->add_flag("--audit", audit, "also copy the raw input series for before/after review");

    auto* validate = app.add_subcommand("validate", "score simulated against observed generation");
    validate->add_option("-c,--config", config_path, "run configuration JSON")->required();

    auto* capacity = app.add_subcommand("capacity-check",
                                        "compare cumulative fleet capacity against a yearly reference");
    capacity->add_option("--fleet", fleet_path, "fleet CSV")->required();
    capacity->add_option("--reference", reference_path, "reference CSV (year,capacity_mw)")->required();
    capacity->add_option("-o,--output", output_path, "output ratio CSV")->required();

    auto* report = app.add_subcommand("report", "regroup a metrics CSV into system-size bands");
    report->add_option("--metrics", metrics_path, "metrics.csv from validate")->required();
    report->add_option("-o,--output", report_dir, "output directory")->required();
    report->add_option("--notch-constant", notch_constant, "notch half-width constant");

    CLI11_PARSE(app, argc, argv);

    if (simulate->parsed()) {
        const auto config = windsim::load_run_config(config_path);
        const auto summary = windsim::pipeline::run_simulate(config);
        for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
        if (!summary.imputation_summary.empty())
            std::cerr << "fleet repairs: " << summary.imputation_summary << "\n";
        std::cout << "simulated " << summary.records << " records into " << config.output_dir.string()
                  << " (config " << config.config_hash() << ")\n";
    } else if (clean->parsed()) {
        auto config = windsim::load_run_config(config_path);
        if (audit) config.audit = true;
        const auto summary = windsim::pipeline::run_clean(config);
        std::cout << "cleaned " << summary.total_series << " series, " << summary.surviving_series
                  << " kept -> " << config.output_dir.string() << "\n";
    } else if (validate->parsed()) {
        const auto config = windsim::load_run_config(config_path);
        const auto summary = windsim::pipeline::run_validate(config);
        for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
        std::cout << "wrote " << summary.metric_rows << " metric rows over " << summary.groups
                  << " groups -> " << config.output_dir.string() << "\n";
    } else if (capacity->parsed()) {
        windsim::pipeline::run_capacity_check(fleet_path, reference_path, output_path);
        std::cout << "wrote capacity ratios -> " << output_path << "\n";
    } else if (report->parsed()) {
        windsim::pipeline::run_report(metrics_path, report_dir, notch_constant);
        std::cout << "wrote banded report -> " << report_dir << "\n";
    }
    return windsim::exit_code::ok;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const windsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return windsim::exit_code::config;
    } catch (const windsim::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return windsim::exit_code::data;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return windsim::exit_code::internal;
    }
}

#include "windsim/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "windsim/aggregate.hpp"
#include "windsim/cleaning.hpp"
#include "windsim/csv.hpp"
#include "windsim/errors.hpp"
#include "windsim/fleet.hpp"
#include "windsim/power_model.hpp"
#include "windsim/raster.hpp"
#include "windsim/stats.hpp"
#include "windsim/wind_field.hpp"

namespace windsim::pipeline {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string sanitize_filename(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                        c == '-' || c == '_' || c == '.';
        out += ok ? c : '_';
    }
    return out.empty() ? std::string("_") : out;
}

struct PreparedFleet {
    std::vector<FleetRecord> records;
    ImputationReport imputed;
    std::size_t sp_repaired = 0;
};

PreparedFleet prepare_fleet(const fs::path& path, double sp_floor) {
    Fleet fleet = load_fleet(path);
    PreparedFleet out;
    out.imputed = impute_missing(fleet.records);
    out.sp_repaired = repair_specific_power(fleet.records, sp_floor);
    check_fleet_invariants(fleet.records, sp_floor);
    out.records = std::move(fleet.records);
    return out;
}

std::vector<FleetRecord> load_prepared_fleet(const fs::path& path, double sp_floor) {
    return prepare_fleet(path, sp_floor).records;
}

void write_imputation_report(const fs::path& path, const PreparedFleet& fleet) {
    CsvWriter out(path);
    out.write_row({"field", "imputed_count", "method"});
    for (const auto& f : fleet.imputed.fields)
        out.write_row({f.field, std::to_string(f.count), f.method});
    out.write_row({"specific_power_below_floor", std::to_string(fleet.sp_repaired),
                   "rotor recomputed from same-capacity peers"});
}

void write_generation_csv(const fs::path& path, const GenerationSeries& gen) {
    CsvWriter out(path);
    out.write_row({"timestamp", "record_id", "power_kw", "installed_kw", "flags"});
    for (std::size_t t = 0; t < gen.axis.size; ++t)
        out.write_row({format_instant(gen.axis.at(t)), gen.record_id, format_double(gen.power_kw[t]),
                       format_double(gen.installed_kw[t]), std::to_string(gen.flags[t])});
}

}  // namespace

GenerationSeries load_generation_csv(const fs::path& path) {
    const CsvTable table = read_csv(path);
    const int c_ts = table.require_column("timestamp");
    const int c_id = table.require_column("record_id");
    const int c_power = table.require_column("power_kw");
    const int c_installed = table.require_column("installed_kw");
    const int c_flags = table.require_column("flags");
    if (table.rows.empty()) throw DataError(path.string() + ": no generation rows");

    GenerationSeries gen;
    gen.record_id = table.rows.front()[c_id];
    std::vector<Instant> stamps;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string ctx = path.string() + ":" + std::to_string(table.row_lines[r]);
        stamps.push_back(parse_instant(row[c_ts]));
        gen.power_kw.push_back(parse_double(row[c_power], ctx));
        gen.installed_kw.push_back(parse_double(row[c_installed], ctx));
        gen.flags.push_back(static_cast<std::uint8_t>(parse_double(row[c_flags], ctx)));
        if (row[c_id] != gen.record_id) throw DataError(ctx + ": mixed record ids in one file");
    }
    for (std::size_t i = 1; i < stamps.size(); ++i)
        if (stamps[i] - stamps[i - 1] != seconds_per_hour)
            throw DataError(path.string() + ": generation series is not uniform hourly");
    gen.axis = TimeAxis{stamps.front(), seconds_per_hour, stamps.size()};
    return gen;
}

namespace {

struct Manifest {
    std::string config_hash;
    std::string dataset;
    std::string gwa;
    Grid grid;
    double level_lo_m = 0, level_hi_m = 0;
    TimeAxis time;
    std::vector<std::string> files;
};

void write_manifest(const fs::path& dir, const Manifest& m) {
    json j;
    j["config_hash"] = m.config_hash;
    j["dataset"] = m.dataset;
    j["gwa"] = m.gwa;
    j["grid"] = {{"lat_start", m.grid.lat_start}, {"lat_step", m.grid.lat_step},
                 {"lon_start", m.grid.lon_start}, {"lon_step", m.grid.lon_step},
                 {"n_lat", m.grid.n_lat},         {"n_lon", m.grid.n_lon}};
    j["levels_m"] = {m.level_lo_m, m.level_hi_m};
    j["time"] = {{"start", format_instant(m.time.start)}, {"step_s", m.time.step_s}, {"size", m.time.size}};
    j["records"] = m.files.size();
    j["files"] = m.files;
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw DataError("cannot write manifest in '" + dir.string() + "'");
    out << j.dump(2) << "\n";
}

Manifest read_manifest(const fs::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw DataError("missing manifest.json in '" + dir.string() + "' (run simulate first)");
    json j;
    try {
        in >> j;
        Manifest m;
        m.config_hash = j.at("config_hash").get<std::string>();
        m.dataset = j.at("dataset").get<std::string>();
        m.gwa = j.at("gwa").get<std::string>();
        const auto& g = j.at("grid");
        m.grid = Grid{g.at("lat_start").get<double>(), g.at("lat_step").get<double>(),
                      g.at("lon_start").get<double>(), g.at("lon_step").get<double>(),
                      g.at("n_lat").get<std::size_t>(), g.at("n_lon").get<std::size_t>()};
        m.level_lo_m = j.at("levels_m")[0].get<double>();
        m.level_hi_m = j.at("levels_m")[1].get<double>();
        m.time = TimeAxis{parse_instant(j.at("time").at("start").get<std::string>()),
                          j.at("time").at("step_s").get<std::int64_t>(),
                          j.at("time").at("size").get<std::size_t>()};
        m.files = j.at("files").get<std::vector<std::string>>();
        return m;
    } catch (const json::exception& e) {
        throw DataError(dir.string() + "/manifest.json is malformed: " + e.what());
    }
}

}  // namespace

SimulateSummary run_simulate(const RunConfig& config) {
    config.validate_for_simulate();

    PreparedFleet fleet = prepare_fleet(config.fleet, config.thresholds.sp_floor_w_m2);
    std::vector<FleetRecord>& records = fleet.records;
    std::sort(records.begin(), records.end(),
              [](const FleetRecord& a, const FleetRecord& b) { return a.id < b.id; });

    const BoundingBox bbox = config.bbox.value_or(BoundingBox{-90, 90, -360, 360});
    const WindField field = load_wind_field(config.wind_field, bbox, config.time_range);

    std::optional<MeanWindRaster> raster;
    if (config.correction.tag != "none")
        raster = load_raster(config.correction.raster, config.correction_height_m());

    SimulateOptions options;
    options.raster = raster ? &*raster : nullptr;
    options.dataset_tag = config.dataset;
    options.gwa_tag = config.correction.tag == "none" ? "" : config.correction.tag;

    // fan out per record; slots keep results in id order regardless of scheduling
    const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(records.size(), 1));
    std::vector<GenerationSeries> results(records.size());
    std::vector<std::exception_ptr> failures(records.size());
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < records.size(); i += workers) {
                try {
                    results[i] = simulate_location(records[i], field, options);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);

    fs::create_directories(config.output_dir);
    write_imputation_report(config.output_dir / "imputation_report.csv", fleet);
    SimulateSummary summary;
    summary.records = records.size();
    for (const auto& f : fleet.imputed.fields)
        summary.imputation_summary +=
            (summary.imputation_summary.empty() ? "" : ", ") + f.field + ": " + std::to_string(f.count);
    if (fleet.sp_repaired)
        summary.imputation_summary += (summary.imputation_summary.empty() ? "" : ", ") +
                                      std::string("specific-power repairs: ") +
                                      std::to_string(fleet.sp_repaired);
    Manifest manifest;
    manifest.config_hash = config.config_hash();
    manifest.dataset = options.dataset_tag;
    manifest.gwa = options.gwa_tag;
    manifest.grid = field.grid;
    manifest.level_lo_m = field.level_lo_m;
    manifest.level_hi_m = field.level_hi_m;
    manifest.time = field.time;

    std::set<std::string> used_names;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const std::string filename = "gen_" + sanitize_filename(records[i].id) + ".csv";
        if (!used_names.insert(filename).second)
            throw DataError("record ids '" + records[i].id + "' collide on output file " + filename);
        write_generation_csv(config.output_dir / filename, results[i]);
        manifest.files.push_back(filename);
        bool any_capacity = false;
        for (double c : results[i].installed_kw) any_capacity |= c > 0;
        if (!any_capacity)
            summary.warnings.push_back("record " + records[i].id +
                                       ": commissioned after the simulated period, output is all zero");
    }

    // per-location correction factors, for external plotting
    if (raster) {
        CsvWriter factors(config.output_dir / "correction_factors.csv");
        factors.write_row({"record_id", "lat", "lon", "gwa_mean_ms", "reanalysis_mean_ms", "factor"});
        for (std::size_t i = 0; i < records.size(); ++i) {
            if (!results[i].correction) continue;
            const CorrectionFactor& cf = *results[i].correction;
            factors.write_row({records[i].id, format_double(records[i].lat),
                               format_double(records[i].lon), format_double(cf.gwa_mean),
                               format_double(cf.reanalysis_mean), format_double(cf.factor)});
        }
    }
    write_manifest(config.output_dir, manifest);
    summary.files = manifest.files;
    return summary;
}

ObservedSeries load_observed_csv(const fs::path& path) {
    const CsvTable table = read_csv(path);
    ObservedSeries obs;
    obs.name = path.stem().string();

    int value_col;
    if (table.header == std::vector<std::string>{"timestamp", "power_kw"}) {
        obs.is_capacity_factor = false;
        value_col = 1;
    } else if (table.header == std::vector<std::string>{"timestamp", "cf"}) {
        obs.is_capacity_factor = true;
        value_col = 1;
    } else {
        throw DataError(path.string() + ": observed header must be timestamp,power_kw or timestamp,cf");
    }

    std::vector<std::pair<Instant, std::optional<double>>> rows;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string ctx = path.string() + ":" + std::to_string(table.row_lines[r]);
        const Instant t = parse_instant(row[0]);
        if (!rows.empty() && t <= rows.back().first)
            throw DataError(ctx + ": timestamps must be strictly increasing");
        std::optional<double> value;
        if (!row[value_col].empty()) {
            const double v = parse_double(row[value_col], ctx);
            if (!std::isfinite(v)) throw DataError(ctx + ": non-finite observed value");
            value = v;
        }
        rows.emplace_back(t, value);
    }
    if (rows.size() < 2) throw DataError(path.string() + ": need at least two observations");

    // native step = smallest gap; missing timestamps become masked steps
    std::int64_t step = rows[1].first - rows[0].first;
    for (std::size_t i = 1; i < rows.size(); ++i) step = std::min(step, rows[i].first - rows[i - 1].first);
    if (step <= 0) throw DataError(path.string() + ": could not infer a positive time step");
    const auto span = rows.back().first - rows.front().first;
    if (span % step != 0) throw DataError(path.string() + ": timestamps do not align to a uniform step");

    MaskedSeries series;
    series.axis = TimeAxis{rows.front().first, step, static_cast<std::size_t>(span / step) + 1};
    series.values.assign(series.axis.size, 0.0);
    series.masked.assign(series.axis.size, 1);
    for (const auto& [t, value] : rows) {
        const auto idx = series.axis.index_of(t);
        if (!idx) throw DataError(path.string() + ": timestamp " + format_instant(t) +
                                  " does not align to the inferred step");
        if (value) {
            series.values[*idx] = *value;
            series.masked[*idx] = 0;
        }
    }
    obs.series = std::move(series);
    return obs;
}

namespace {

struct Exclusion {
    std::string region_norm;
    std::optional<Instant> begin;
    std::optional<Instant> end;
};

std::vector<Exclusion> load_exclusions(const fs::path& path) {
    const CsvTable table = read_csv(path);
    const int c_region = table.require_column("region");
    const int c_start = table.require_column("start");
    const int c_end = table.require_column("end");
    std::vector<Exclusion> out;
    for (const auto& row : table.rows) {
        Exclusion e;
        e.region_norm = normalize_name(row[c_region]);
        if (!row[c_start].empty()) e.begin = parse_instant(row[c_start]);
        if (!row[c_end].empty()) e.end = parse_instant(row[c_end]);
        out.push_back(std::move(e));
    }
    return out;
}

std::string intervals_to_text(const TimeAxis& axis, const std::vector<MaskedInterval>& intervals) {
    std::string out;
    for (const auto& iv : intervals) {
        if (!out.empty()) out += ';';
        out += format_instant(axis.at(iv.begin)) + "/" + format_instant(axis.at(iv.end - 1));
    }
    return out;
}

}  // namespace

CleanSummary run_clean(const RunConfig& config) {
    config.validate_for_clean();

    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(config.observed_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            inputs.push_back(entry.path());
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty())
        throw DataError("observed_dir '" + config.observed_dir.string() + "' contains no CSV files");

    std::vector<Exclusion> exclusions;
    if (!config.exclusions.empty()) exclusions = load_exclusions(config.exclusions);

    std::vector<FleetRecord> records = load_prepared_fleet(config.fleet, config.thresholds.sp_floor_w_m2);

    const fs::path cleaned_dir = config.output_dir / "cleaned";
    const fs::path report_dir = config.output_dir / "reports";
    fs::create_directories(cleaned_dir);
    fs::create_directories(report_dir);
    if (config.audit) fs::create_directories(config.output_dir / "raw");

    CleaningOptions options;
    options.constant_run_steps = static_cast<std::size_t>(config.thresholds.constant_run_hours);
    options.zero_run_steps = static_cast<std::size_t>(config.thresholds.zero_run_hours);
    options.min_years = config.thresholds.min_years;

    // attrition bookkeeping in pipeline order
    const std::vector<std::string> rule_order = {
        "exclusion_list",
        "interpolated_gaps",
        "trim_edge_zeros",
        "constant_run_gt_" + std::to_string(options.constant_run_steps) + "h",
        "zero_run_gt_" + std::to_string(options.zero_run_steps) + "h",
        "cf_above_one",
        "generation_without_capacity",
        "short_series_lt_" + format_double(config.thresholds.min_years) + "y",
    };
    std::map<std::string, std::size_t> series_affected;
    std::map<std::string, std::size_t> series_dropped;
    for (const auto& r : rule_order) {
        series_affected[r] = 0;
        series_dropped[r] = 0;
    }

    std::vector<std::string> fleet_names;
    for (const auto& r : records) fleet_names.push_back(r.name);

    CleanSummary summary;
    summary.total_series = inputs.size();

    std::set<std::string> used_names;
    for (const fs::path& input : inputs) {
        ObservedSeries obs = load_observed_csv(input);
        if (!used_names.insert(sanitize_filename(obs.name)).second)
            throw DataError("series names collide after filename sanitization: '" + obs.name + "'");
        if (config.audit) fs::copy_file(input, config.output_dir / "raw" / input.filename(),
                                        fs::copy_options::overwrite_existing);

        // rendered report rows; pre-pipeline phases run on their own axes
        std::vector<std::vector<std::string>> report_rows;
        std::set<std::string> fired;

        bool dropped_by_exclusion = false;
        const std::string obs_norm = normalize_name(obs.name);
        for (const auto& e : exclusions) {
            if (e.region_norm != obs_norm) continue;
            if (!e.begin && !e.end) {
                dropped_by_exclusion = true;
                break;
            }
            const Instant lo = e.begin.value_or(obs.series.axis.start);
            const Instant hi = e.end.value_or(obs.series.axis.last());
            std::size_t masked_now = 0;
            for (std::size_t i = 0; i < obs.series.size(); ++i) {
                const Instant t = obs.series.axis.at(i);
                if (t >= lo && t <= hi && !obs.series.masked[i]) {
                    obs.series.masked[i] = 1;
                    ++masked_now;
                }
            }
            if (masked_now) fired.insert("exclusion_list");
            report_rows.push_back({"exclusion_list", std::to_string(masked_now),
                                   format_instant(lo) + "/" + format_instant(hi)});
        }
        if (dropped_by_exclusion) {
            series_affected["exclusion_list"] += 1;
            series_dropped["exclusion_list"] += 1;
            CsvWriter report(report_dir / (sanitize_filename(obs.name) + "_rules.csv"));
            report.write_row({"rule", "steps_masked", "intervals"});
            report.write_row({"exclusion_list", std::to_string(obs.series.size()), "whole series"});
            continue;
        }

        // sub-hourly input: interpolate short gaps, then aggregate to hourly means
        if (obs.series.axis.step_s < seconds_per_hour) {
            const auto max_gap = static_cast<std::size_t>(seconds_per_hour / obs.series.axis.step_s);
            RemovalLog gap_log;
            interpolate_short_gaps(obs.series, max_gap, gap_log);
            for (const auto& entry : gap_log.entries) {
                if (entry.steps_masked > 0) fired.insert(entry.rule);
                report_rows.push_back({entry.rule, std::to_string(entry.steps_masked),
                                       intervals_to_text(obs.series.axis, entry.intervals)});
            }
            obs.series = aggregate_to_hourly(obs.series);
        }

        // capacity for the CF filter: kW series need a matched fleet record
        std::vector<double> installed;
        CleaningOptions series_options = options;
        if (!obs.is_capacity_factor) {
            const auto matches = match_names(fleet_names, {obs.name});
            if (!matches.empty()) {
                installed = capacity_timeline(records[matches.front().sim_index], obs.series.axis)
                                .installed_kw;
            } else {
                series_options.apply_cf_rule = false;
            }
        }

        CleanResult result = clean_series(std::move(obs.series), installed, series_options);
        for (const auto& entry : result.log.entries) {
            if (entry.steps_masked > 0) fired.insert(entry.rule);
            report_rows.push_back({entry.rule, std::to_string(entry.steps_masked),
                                   intervals_to_text(result.series.axis, entry.intervals)});
        }

        for (const auto& rule : fired) series_affected[rule] += 1;
        if (!result.keep) {
            series_affected[rule_order.back()] += 1;
            series_dropped[rule_order.back()] += 1;
        }

        CsvWriter report(report_dir / (sanitize_filename(obs.name) + "_rules.csv"));
        report.write_row({"rule", "steps_masked", "intervals"});
        for (const auto& row : report_rows) report.write_row(row);
        report.write_row({rule_order.back(), result.keep ? "0" : "dropped", ""});

        if (result.keep) {
            ++summary.surviving_series;
            CsvWriter out(cleaned_dir / (sanitize_filename(obs.name) + ".csv"));
            out.write_row({"timestamp", obs.is_capacity_factor ? "cf" : "power_kw"});
            for (std::size_t i = 0; i < result.series.size(); ++i)
                out.write_row({format_instant(result.series.axis.at(i)),
                               result.series.masked[i] ? "" : format_double(result.series.values[i])});
        }
    }

    CsvWriter summary_csv(config.output_dir / "cleaning_summary.csv");
    summary_csv.write_row({"rule", "series_affected", "series_remaining"});
    summary_csv.write_row({"total", "", std::to_string(summary.total_series)});
    std::size_t remaining = summary.total_series;
    for (const auto& rule : rule_order) {
        const std::size_t affected = series_affected[rule];
        remaining -= series_dropped[rule];
        summary_csv.write_row({rule, std::to_string(affected), std::to_string(remaining)});
        summary.rule_series_counts.emplace_back(rule, affected);
    }
    if (remaining != summary.surviving_series)
        throw Error("internal: attrition accounting mismatch");
    return summary;
}

namespace {

struct PreparedPair {
    const FleetRecord* record;
    MaskedSeries sim_cf;
    MaskedSeries obs_cf;
    std::vector<double> installed_kw;
};

MaskedSeries crop(const MaskedSeries& s, Instant begin, std::size_t size) {
    const auto offset = s.axis.index_of(begin);
    if (!offset || *offset + size > s.size())
        throw DataError("alignment error: series does not cover the overlap window");
    MaskedSeries out;
    out.axis = TimeAxis{begin, s.axis.step_s, size};
    out.values.assign(s.values.begin() + static_cast<std::ptrdiff_t>(*offset),
                      s.values.begin() + static_cast<std::ptrdiff_t>(*offset + size));
    out.masked.assign(s.masked.begin() + static_cast<std::ptrdiff_t>(*offset),
                      s.masked.begin() + static_cast<std::ptrdiff_t>(*offset + size));
    return out;
}

struct MetricsRow {
    std::string region_id, dataset, gwa, temporal, spatial;
    std::size_t system_size_cells = 0;
    ValidationMetrics metrics;
};

}  // namespace

ValidateSummary run_validate(const RunConfig& config) {
    config.validate_for_validate();

    std::vector<FleetRecord> records = load_prepared_fleet(config.fleet, config.thresholds.sp_floor_w_m2);
    std::vector<std::string> fleet_names;
    for (const auto& r : records) fleet_names.push_back(r.name);

    // cleaned observations
    std::vector<fs::path> obs_files;
    for (const auto& entry : fs::directory_iterator(config.cleaned_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            obs_files.push_back(entry.path());
    std::sort(obs_files.begin(), obs_files.end());
    if (obs_files.empty())
        throw DataError("cleaned_dir '" + config.cleaned_dir.string() + "' contains no CSV files");
    std::vector<ObservedSeries> observations;
    std::vector<std::string> obs_names;
    for (const auto& p : obs_files) {
        observations.push_back(load_observed_csv(p));
        obs_names.push_back(observations.back().name);
    }

    const std::vector<NameMatch> matches = match_names(fleet_names, obs_names);
    if (matches.empty()) throw DataError("no observed series matches a fleet record name");

    fs::create_directories(config.output_dir);
    std::vector<MetricsRow> rows;
    std::vector<std::string> summary_warnings;
    std::size_t group_count = 0;

    for (const fs::path& run_dir : config.sim_runs) {
        const Manifest manifest = read_manifest(run_dir);

        std::map<std::string, GenerationSeries> gen_by_id;
        for (const std::string& file : manifest.files) {
            GenerationSeries gen = load_generation_csv(run_dir / file);
            gen_by_id.emplace(gen.record_id, std::move(gen));
        }

        // pair up matched parks present in this run
        struct GroupMember {
            const FleetRecord* record;
            const GenerationSeries* gen;
            const ObservedSeries* obs;
        };
        std::vector<GroupMember> members;
        for (const NameMatch& m : matches) {
            const FleetRecord& rec = records[m.sim_index];
            const auto it = gen_by_id.find(rec.id);
            if (it == gen_by_id.end()) continue;
            members.push_back({&rec, &it->second, &observations[m.obs_index]});
        }
        if (members.empty())
            throw DataError("sim run '" + run_dir.string() + "' has no generation series for matched parks");

        // groups: every park, plus state and country rollups of matched parks
        std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < members.size(); ++i) {
            groups[{"park", members[i].record->name}].push_back(i);
            if (!members[i].record->state.empty())
                groups[{"state", members[i].record->state}].push_back(i);
            if (!members[i].record->country.empty())
                groups[{"country", members[i].record->country}].push_back(i);
        }

        for (const auto& [key, member_ids] : groups) {
            const auto& [spatial_level, region_name] = key;
            ++group_count;

            // overlap window across all member axes
            Instant begin = std::numeric_limits<Instant>::min();
            Instant end = std::numeric_limits<Instant>::max();
            for (std::size_t i : member_ids) {
                begin = std::max(begin, members[i].gen->axis.start);
                begin = std::max(begin, members[i].obs->series.axis.start);
                end = std::min(end, members[i].gen->axis.last());
                end = std::min(end, members[i].obs->series.axis.last());
            }
            if (end < begin)
                throw DataError("alignment error: simulated and observed series of region '" +
                                region_name + "' have disjoint time axes");
            const auto window = static_cast<std::size_t>((end - begin) / seconds_per_hour) + 1;

            std::vector<MaskedSeries> sim_cf, obs_cf;
            std::vector<std::vector<double>> capacities;
            std::vector<Location> locations;
            for (std::size_t i : member_ids) {
                const GroupMember& member = members[i];
                MaskedSeries gen_kw = crop(MaskedSeries(member.gen->axis, member.gen->power_kw), begin, window);
                MaskedSeries installed =
                    crop(MaskedSeries(member.gen->axis, member.gen->installed_kw), begin, window);
                sim_cf.push_back(to_capacity_factor(gen_kw, installed.values));

                MaskedSeries obs_window = crop(member.obs->series, begin, window);
                obs_cf.push_back(member.obs->is_capacity_factor
                                     ? std::move(obs_window)
                                     : to_capacity_factor(obs_window, installed.values));
                capacities.push_back(std::move(installed.values));
                locations.push_back({member.record->lat, member.record->lon});
            }

            align_and_mask(sim_cf, obs_cf);
            const MaskedSeries sim_agg = aggregate_spatial(sim_cf, capacities);
            const MaskedSeries obs_agg = aggregate_spatial(obs_cf, capacities);
            if (sim_agg.unmasked_count() == 0) {
                summary_warnings.push_back("region '" + region_name +
                                           "' degenerates to an empty series after alignment, skipped");
                continue;
            }
            const std::size_t cells = system_size(locations, manifest.grid);

            for (TemporalLevel level :
                 {TemporalLevel::hourly, TemporalLevel::daily, TemporalLevel::monthly}) {
                const BucketSeries sim_b = aggregate_temporal(sim_agg, level);
                const BucketSeries obs_b = aggregate_temporal(obs_agg, level);
                MetricsRow row;
                row.region_id = spatial_level + ":" + region_name;
                row.dataset = manifest.dataset;
                row.gwa = manifest.gwa;
                row.temporal = temporal_level_name(level);
                row.spatial = spatial_level;
                row.system_size_cells = cells;
                row.metrics = validate_pair(sim_b.view(), obs_b.view());
                rows.push_back(std::move(row));
            }
        }
    }

    // deterministic row order
    const auto spatial_rank = [](const std::string& s) { return s == "park" ? 0 : s == "state" ? 1 : 2; };
    const auto temporal_rank = [](const std::string& t) {
        return t == "hourly" ? 0 : t == "daily" ? 1 : 2;
    };
    std::sort(rows.begin(), rows.end(), [&](const MetricsRow& a, const MetricsRow& b) {
        return std::tuple(a.dataset, a.gwa, spatial_rank(a.spatial), a.region_id, temporal_rank(a.temporal)) <
               std::tuple(b.dataset, b.gwa, spatial_rank(b.spatial), b.region_id, temporal_rank(b.temporal));
    });

    CsvWriter metrics_csv(config.output_dir / "metrics.csv");
    metrics_csv.write_row({"region_id", "dataset_tag", "gwa_tag", "temporal_level", "spatial_level",
                           "system_size", "n", "pearson", "rmse", "mbe"});
    for (const auto& row : rows)
        metrics_csv.write_row({row.region_id, row.dataset, row.gwa, row.temporal, row.spatial,
                               std::to_string(row.system_size_cells), std::to_string(row.metrics.n),
                               row.metrics.pearson_r ? format_double(*row.metrics.pearson_r) : "",
                               format_double(row.metrics.rmse), format_double(row.metrics.mbe)});

    // distribution stats per (dataset, gwa, temporal, spatial, metric) over regions
    CsvWriter box_csv(config.output_dir / "boxplot_stats.csv");
    box_csv.write_row({"dataset_tag", "gwa_tag", "temporal_level", "spatial_level", "metric", "n",
                       "median", "q25", "q75", "notch_lo", "notch_hi", "whisker_lo", "whisker_hi",
                       "outliers"});
    std::map<std::tuple<std::string, std::string, int, int, std::string>, std::vector<double>> box_groups;
    for (const auto& row : rows) {
        const auto base = std::tuple(row.dataset, row.gwa, temporal_rank(row.temporal),
                                     spatial_rank(row.spatial), std::string());
        auto with_metric = [&](const char* name) {
            auto key = base;
            std::get<4>(key) = name;
            return key;
        };
        if (row.metrics.pearson_r) box_groups[with_metric("pearson")].push_back(*row.metrics.pearson_r);
        box_groups[with_metric("rmse")].push_back(row.metrics.rmse);
        box_groups[with_metric("mbe")].push_back(row.metrics.mbe);
    }
    const char* temporal_names[] = {"hourly", "daily", "monthly"};
    const char* spatial_names[] = {"park", "state", "country"};
    for (auto& [key, samples] : box_groups) {
        std::sort(samples.begin(), samples.end());
        const NotchInterval notch = notch_interval(samples, config.thresholds.notch_constant);
        const double q25 = quantile_sorted(samples, 0.25);
        const double q75 = quantile_sorted(samples, 0.75);
        const double fence_lo = q25 - 1.5 * notch.iqr;
        const double fence_hi = q75 + 1.5 * notch.iqr;
        double whisker_lo = notch.median, whisker_hi = notch.median;
        std::size_t outliers = 0;
        for (double v : samples) {
            if (v < fence_lo || v > fence_hi) {
                ++outliers;
                continue;
            }
            whisker_lo = std::min(whisker_lo, v);
            whisker_hi = std::max(whisker_hi, v);
        }
        box_csv.write_row({std::get<0>(key), std::get<1>(key), temporal_names[std::get<2>(key)],
                           spatial_names[std::get<3>(key)], std::get<4>(key),
                           std::to_string(samples.size()), format_double(notch.median),
                           format_double(q25), format_double(q75), format_double(notch.lo),
                           format_double(notch.hi), format_double(whisker_lo),
                           format_double(whisker_hi), std::to_string(outliers)});
    }

    return ValidateSummary{rows.size(), group_count, std::move(summary_warnings)};
}

void run_capacity_check(const fs::path& fleet_csv, const fs::path& reference_csv,
                        const fs::path& output_csv) {
    Fleet fleet = load_fleet(fleet_csv);
    impute_missing(fleet.records);

    std::map<int, double> fleet_by_year;  // capacity commissioned in each year, kW
    for (const auto& r : fleet.records)
        fleet_by_year[r.commissioning->year] += r.capacity_kw.value_or(0.0);

    const CsvTable reference = read_csv(reference_csv);
    const int c_year = reference.require_column("year");
    const int c_cap = reference.require_column("capacity_mw");
    std::map<int, double> reference_by_year;
    for (std::size_t r = 0; r < reference.rows.size(); ++r) {
        const std::string ctx = reference_csv.string() + ":" + std::to_string(reference.row_lines[r]);
        const int year = static_cast<int>(parse_double(reference.rows[r][c_year], ctx));
        if (!reference_by_year.emplace(year, parse_double(reference.rows[r][c_cap], ctx)).second)
            throw DataError(ctx + ": duplicate reference year");
    }
    if (reference_by_year.empty()) throw DataError(reference_csv.string() + ": no reference rows");

    std::set<int> years;
    for (const auto& [y, _] : fleet_by_year) years.insert(y);
    for (const auto& [y, _] : reference_by_year) years.insert(y);

    CsvWriter out(output_csv);
    out.write_row({"year", "fleet_mw", "reference_mw", "ratio", "note"});
    double cumulative_kw = 0;
    for (int year : years) {
        if (const auto it = fleet_by_year.find(year); it != fleet_by_year.end())
            cumulative_kw += it->second;
        const double fleet_mw = cumulative_kw / 1000.0;
        const auto ref = reference_by_year.find(year);
        if (ref == reference_by_year.end()) {
            out.write_row({std::to_string(year), format_double(fleet_mw), "", "", "no_reference_year"});
        } else if (ref->second <= 0) {
            out.write_row({std::to_string(year), format_double(fleet_mw), format_double(ref->second),
                           "", "empty_reference"});
        } else {
            out.write_row({std::to_string(year), format_double(fleet_mw), format_double(ref->second),
                           format_double(fleet_mw / ref->second), ""});
        }
    }
}

void run_report(const fs::path& metrics_csv, const fs::path& output_dir, double notch_constant) {
    const CsvTable table = read_csv(metrics_csv);
    const int c_dataset = table.require_column("dataset_tag");
    const int c_gwa = table.require_column("gwa_tag");
    const int c_temporal = table.require_column("temporal_level");
    const int c_size = table.require_column("system_size");
    const int c_pearson = table.require_column("pearson");
    const int c_rmse = table.require_column("rmse");
    const int c_mbe = table.require_column("mbe");

    // size bands: 1: ssp < 5, 2: 5 <= ssp < 25, 3: ssp >= 25
    auto band_of = [](double ssp) { return ssp < 5 ? "1" : ssp < 25 ? "2" : "3"; };

    std::map<std::tuple<std::string, std::string, std::string, std::string, std::string>,
             std::vector<double>>
        groups;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string ctx = metrics_csv.string() + ":" + std::to_string(table.row_lines[r]);
        const std::string band = band_of(parse_double(row[c_size], ctx));
        auto add = [&](const char* metric, const std::string& text) {
            if (text.empty()) return;
            groups[{row[c_dataset], row[c_gwa], row[c_temporal], metric, band}].push_back(
                parse_double(text, ctx));
        };
        add("pearson", row[c_pearson]);
        add("rmse", row[c_rmse]);
        add("mbe", row[c_mbe]);
    }
    if (groups.empty()) throw DataError(metrics_csv.string() + ": no metric rows to report");

    fs::create_directories(output_dir);
    CsvWriter out(output_dir / "banded_boxplot_stats.csv");
    out.write_row({"dataset_tag", "gwa_tag", "temporal_level", "metric", "size_band", "n", "median",
                   "q25", "q75", "notch_lo", "notch_hi"});
    std::ofstream text(output_dir / "summary.txt");
    text << "metric distributions by system-size band (1: <5 cells, 2: 5-24, 3: >=25)\n\n";
    for (auto& [key, samples] : groups) {
        std::sort(samples.begin(), samples.end());
        const NotchInterval notch = notch_interval(samples, notch_constant);
        out.write_row({std::get<0>(key), std::get<1>(key), std::get<2>(key), std::get<3>(key),
                       std::get<4>(key), std::to_string(samples.size()), format_double(notch.median),
                       format_double(quantile_sorted(samples, 0.25)),
                       format_double(quantile_sorted(samples, 0.75)), format_double(notch.lo),
                       format_double(notch.hi)});
        text << std::get<0>(key) << (std::get<1>(key).empty() ? "" : "+" + std::get<1>(key)) << " "
             << std::get<2>(key) << " " << std::get<3>(key) << " band " << std::get<4>(key) << ": median "
             << format_double(notch.median) << " over " << samples.size() << " regions, notch ["
             << format_double(notch.lo) << ", " << format_double(notch.hi) << "]\n";
    }
}

}  // namespace windsim::pipeline

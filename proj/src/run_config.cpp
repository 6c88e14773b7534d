#include "windsim/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "windsim/csv.hpp"
#include "windsim/errors.hpp"

namespace windsim {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

// Canonical JSON view of every config field (nlohmann objects iterate sorted).
json canonical_json(const RunConfig& cfg) {
    json j;
    j["dataset"] = cfg.dataset;
    j["wind_field"] = cfg.wind_field.string();
    j["fleet"] = cfg.fleet.string();
    j["observed_dir"] = cfg.observed_dir.string();
    j["exclusions"] = cfg.exclusions.string();
    j["correction"] = {{"tag", cfg.correction.tag},
                       {"raster", cfg.correction.raster.string()},
                       {"height_m", cfg.correction.height_m ? json(*cfg.correction.height_m) : json()}};
    j["time_range"] = {{"start", format_instant(cfg.time_range.begin)},
                       {"end", format_instant(cfg.time_range.end)}};
    if (cfg.bbox)
        j["bbox"] = {cfg.bbox->lat_min, cfg.bbox->lat_max, cfg.bbox->lon_min, cfg.bbox->lon_max};
    else
        j["bbox"] = json();
    j["output_dir"] = cfg.output_dir.string();
    {
        json runs = json::array();
        for (const auto& p : cfg.sim_runs) runs.push_back(p.string());
        j["sim_runs"] = runs;
    }
    j["cleaned_dir"] = cfg.cleaned_dir.string();
    j["thresholds"] = {{"zero_run_hours", cfg.thresholds.zero_run_hours},
                       {"constant_run_hours", cfg.thresholds.constant_run_hours},
                       {"min_years", cfg.thresholds.min_years},
                       {"sp_floor_w_m2", cfg.thresholds.sp_floor_w_m2},
                       {"notch_constant", cfg.thresholds.notch_constant}};
    j["seed"] = cfg.seed;
    j["audit"] = cfg.audit;
    return j;
}

}  // namespace

std::string RunConfig::config_hash() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(canonical_json(*this).dump())));
    return buf;
}

double RunConfig::correction_height_m() const {
    if (correction.height_m) return *correction.height_m;
    return dataset == "merra2" ? 50.0 : 100.0;
}

void RunConfig::validate_for_simulate() const {
    if (dataset != "era5" && dataset != "merra2" && dataset != "fixture")
        throw ConfigError("dataset must be era5, merra2 or fixture, got '" + dataset + "'");
    if (wind_field.empty() || !std::filesystem::exists(wind_field))
        throw ConfigError("wind_field path '" + wind_field.string() + "' does not exist");
    if (fleet.empty() || !std::filesystem::exists(fleet))
        throw ConfigError("fleet path '" + fleet.string() + "' does not exist");
    if (correction.tag != "none" && correction.tag != "gwa2" && correction.tag != "gwa3")
        throw ConfigError("correction.tag must be none, gwa2 or gwa3, got '" + correction.tag + "'");
    if (correction.tag != "none" && (correction.raster.empty() || !std::filesystem::exists(correction.raster)))
        throw ConfigError("correction '" + correction.tag + "' needs an existing raster path");
    if (correction.tag == "none" && !correction.raster.empty())
        throw ConfigError("a correction raster is set but correction.tag is none");
    if (time_range.end < time_range.begin) throw ConfigError("time_range end precedes start");
    if (output_dir.empty()) throw ConfigError("output_dir is required");
    if (thresholds.sp_floor_w_m2 <= 0 || thresholds.zero_run_hours <= 0 ||
        thresholds.constant_run_hours <= 0 || thresholds.min_years <= 0 ||
        thresholds.notch_constant <= 0)
        throw ConfigError("thresholds must be positive");
}

void RunConfig::validate_for_clean() const {
    if (observed_dir.empty() || !std::filesystem::is_directory(observed_dir))
        throw ConfigError("observed_dir '" + observed_dir.string() + "' is not a directory");
    if (!exclusions.empty() && !std::filesystem::exists(exclusions))
        throw ConfigError("exclusions path '" + exclusions.string() + "' does not exist");
    if (fleet.empty() || !std::filesystem::exists(fleet))
        throw ConfigError("fleet path '" + fleet.string() + "' does not exist");
    if (output_dir.empty()) throw ConfigError("output_dir is required");
    if (thresholds.zero_run_hours <= 0 || thresholds.constant_run_hours <= 0 || thresholds.min_years <= 0)
        throw ConfigError("thresholds must be positive");
}

void RunConfig::validate_for_validate() const {
    if (fleet.empty() || !std::filesystem::exists(fleet))
        throw ConfigError("fleet path '" + fleet.string() + "' does not exist");
    if (output_dir.empty()) throw ConfigError("output_dir is required");
    if (sim_runs.empty()) throw ConfigError("validate needs at least one entry in sim_runs");
    for (const auto& dir : sim_runs)
        if (!std::filesystem::exists(dir / "manifest.json"))
            throw ConfigError("sim run '" + dir.string() + "' has no manifest.json (run simulate first)");
    if (cleaned_dir.empty() || !std::filesystem::is_directory(cleaned_dir))
        throw ConfigError("cleaned_dir '" + cleaned_dir.string() +
                          "' is not a directory (run clean first)");
}

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    RunConfig cfg;
    try {
        if (j.contains("dataset")) cfg.dataset = j["dataset"].get<std::string>();
        if (j.contains("wind_field")) cfg.wind_field = resolve(base_dir, j["wind_field"].get<std::string>());
        if (j.contains("fleet")) cfg.fleet = resolve(base_dir, j["fleet"].get<std::string>());
        if (j.contains("observed_dir"))
            cfg.observed_dir = resolve(base_dir, j["observed_dir"].get<std::string>());
        if (j.contains("exclusions"))
            cfg.exclusions = resolve(base_dir, j["exclusions"].get<std::string>());
        if (j.contains("correction")) {
            const auto& c = j["correction"];
            if (c.contains("tag")) cfg.correction.tag = c["tag"].get<std::string>();
            if (c.contains("raster") && !c["raster"].get<std::string>().empty())
                cfg.correction.raster = resolve(base_dir, c["raster"].get<std::string>());
            if (c.contains("height_m") && !c["height_m"].is_null())
                cfg.correction.height_m = c["height_m"].get<double>();
        }
        if (j.contains("time_range")) {
            cfg.time_range.begin = parse_instant(j["time_range"]["start"].get<std::string>());
            cfg.time_range.end = parse_instant(j["time_range"]["end"].get<std::string>());
        }
        if (j.contains("bbox")) {
            const auto& b = j["bbox"];
            cfg.bbox = BoundingBox{b["lat_min"].get<double>(), b["lat_max"].get<double>(),
                                   b["lon_min"].get<double>(), b["lon_max"].get<double>()};
        }
        if (j.contains("output_dir")) cfg.output_dir = resolve(base_dir, j["output_dir"].get<std::string>());
        if (j.contains("sim_runs"))
            for (const auto& p : j["sim_runs"]) cfg.sim_runs.push_back(resolve(base_dir, p.get<std::string>()));
        if (j.contains("cleaned_dir")) cfg.cleaned_dir = resolve(base_dir, j["cleaned_dir"].get<std::string>());
        if (j.contains("thresholds")) {
            const auto& t = j["thresholds"];
            if (t.contains("zero_run_hours")) cfg.thresholds.zero_run_hours = t["zero_run_hours"].get<double>();
            if (t.contains("constant_run_hours"))
                cfg.thresholds.constant_run_hours = t["constant_run_hours"].get<double>();
            if (t.contains("min_years")) cfg.thresholds.min_years = t["min_years"].get<double>();
            if (t.contains("sp_floor_w_m2")) cfg.thresholds.sp_floor_w_m2 = t["sp_floor_w_m2"].get<double>();
            if (t.contains("notch_constant")) cfg.thresholds.notch_constant = t["notch_constant"].get<double>();
        }
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("audit")) cfg.audit = j["audit"].get<bool>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config field has the wrong type: ") + e.what());
    } catch (const DataError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str(), std::filesystem::absolute(path).parent_path());
}

std::size_t worker_count() {
    if (const char* env = std::getenv("WINDSIM_WORKERS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n < 1) throw ConfigError("WINDSIM_WORKERS must be a positive integer");
        return static_cast<std::size_t>(n);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min(hw, 8u);
}

}  // namespace windsim

#include "windsim/fleet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <unordered_map>

#include "windsim/csv.hpp"
#include "windsim/errors.hpp"

namespace windsim {

namespace {

const std::vector<std::string> kFleetHeaderV1 = {
    "id", "name", "lat", "lon", "capacity_kw", "hub_height_m", "rotor_diameter_m",
    "commissioning", "commissioning_precision", "state", "country"};

std::optional<double> parse_positive(const std::string& text, const std::string& ctx) {
    if (text.empty()) return std::nullopt;
    const double v = parse_double(text, ctx);
    if (!std::isfinite(v)) throw DataError(ctx + ": non-finite value");
    if (v <= 0) return std::nullopt;  // zero placeholders count as missing
    return v;
}

Commissioning parse_commissioning(const std::string& date, const std::string& precision,
                                  const std::string& ctx) {
    Commissioning c;
    if (precision == "day") c.precision = DatePrecision::day;
    else if (precision == "month") c.precision = DatePrecision::month;
    else if (precision == "year") c.precision = DatePrecision::year;
    else throw DataError(ctx + ": commissioning_precision must be day, month or year, got '" + precision + "'");

    auto digits = [&](std::size_t pos, std::size_t len) {
        int value = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (i >= date.size() || date[i] < '0' || date[i] > '9')
                throw DataError(ctx + ": unparseable commissioning date '" + date + "'");
            value = value * 10 + (date[i] - '0');
        }
        return value;
    };

    c.year = digits(0, 4);
    if (c.precision != DatePrecision::year || date.size() > 4) {
        if (date.size() >= 7) {
            if (date[4] != '-') throw DataError(ctx + ": unparseable commissioning date '" + date + "'");
            c.month = static_cast<unsigned>(digits(5, 2));
            if (c.month < 1 || c.month > 12) throw DataError(ctx + ": commissioning month out of range");
        } else if (c.precision != DatePrecision::year) {
            throw DataError(ctx + ": commissioning date '" + date + "' too short for precision");
        }
        if (date.size() >= 10) {
            if (date[7] != '-') throw DataError(ctx + ": unparseable commissioning date '" + date + "'");
            c.day = static_cast<unsigned>(digits(8, 2));
            if (c.day < 1 || c.day > 31) throw DataError(ctx + ": commissioning day out of range");
        } else if (c.precision == DatePrecision::day) {
            throw DataError(ctx + ": day precision needs a full YYYY-MM-DD date");
        }
    }
    return c;
}

double mean_of(const std::vector<double>& values) {
    long double sum = 0;
    for (double v : values) sum += v;
    return static_cast<double>(sum / static_cast<long double>(values.size()));
}

// Rotor diameter that realizes a target specific power for a capacity.
double diameter_for_sp(double capacity_kw, double sp_w_m2) {
    return 2.0 * std::sqrt(1000.0 * capacity_kw / (std::numbers::pi * sp_w_m2));
}

double record_sp(double capacity_kw, double rotor_diameter_m) {
    const double radius = rotor_diameter_m / 2.0;
    return 1000.0 * capacity_kw / (std::numbers::pi * radius * radius);
}

}  // namespace

Instant Commissioning::step_instant() const {
    switch (precision) {
    case DatePrecision::day: return make_instant(year, month, day);
    case DatePrecision::month: return make_instant(year, month, 15);
    case DatePrecision::year: return make_instant(year, 1, 1);
    }
    throw DataError("invalid commissioning precision");
}

Fleet load_fleet(const std::filesystem::path& path) {
    const CsvTable table = read_csv(path);
    if (table.header != kFleetHeaderV1)
        throw DataError(path.string() + ": not a v1 fleet CSV (unexpected header row)");

    Fleet fleet;
    std::set<std::string> seen_ids;
    std::size_t missing_capacity = 0, missing_hub = 0, missing_rotor = 0, missing_comm = 0;

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const std::string ctx = path.string() + ":" + std::to_string(table.row_lines[r]);
        FleetRecord rec;
        rec.id = row[0];
        rec.name = row[1];
        if (rec.id.empty()) throw DataError(ctx + ": empty record id");
        if (!seen_ids.insert(rec.id).second) throw DataError(ctx + ": duplicate record id '" + rec.id + "'");
        rec.lat = parse_double(row[2], ctx);
        rec.lon = parse_double(row[3], ctx);
        if (!std::isfinite(rec.lat) || !std::isfinite(rec.lon) || std::abs(rec.lat) > 90 ||
            std::abs(rec.lon) > 360)
            throw DataError(ctx + ": implausible location (" + row[2] + ", " + row[3] + ")");
        rec.capacity_kw = parse_positive(row[4], ctx);
        rec.hub_height_m = parse_positive(row[5], ctx);
        rec.rotor_diameter_m = parse_positive(row[6], ctx);
        if (!row[7].empty()) rec.commissioning = parse_commissioning(row[7], row[8], ctx);
        rec.state = row[9];
        rec.country = row[10];

        missing_capacity += !rec.capacity_kw;
        missing_hub += !rec.hub_height_m;
        missing_rotor += !rec.rotor_diameter_m;
        missing_comm += !rec.commissioning;
        fleet.records.push_back(std::move(rec));
    }

    auto flag = [&](const char* field, std::size_t n) {
        if (n) fleet.missing_on_load.fields.push_back({field, n, "flagged"});
    };
    flag("capacity_kw", missing_capacity);
    flag("hub_height_m", missing_hub);
    flag("rotor_diameter_m", missing_rotor);
    flag("commissioning", missing_comm);
    return fleet;
}

ImputationReport impute_missing(std::vector<FleetRecord>& records, const ImputationPolicy& policy) {
    ImputationReport report;

    // commissioning first: the year groups below depend on it
    if (policy.commissioning) {
        std::vector<double> years;
        for (const auto& r : records)
            if (r.commissioning) years.push_back(r.commissioning->year);
        std::size_t n = 0;
        for (auto& r : records) {
            if (r.commissioning) continue;
            if (years.empty())
                throw DataError("impute_missing: no record has a commissioning date");
            Commissioning c;
            c.year = static_cast<int>(std::llround(mean_of(years)));
            c.precision = DatePrecision::year;
            r.commissioning = c;
            ++n;
        }
        if (n) report.fields.push_back({"commissioning", n, "overall mean year"});
    }

    auto impute_by_year_mean = [&](const char* field, auto getter) {
        std::map<int, std::vector<double>> by_year;
        std::vector<double> all;
        for (const auto& r : records) {
            const auto& value = getter(r);
            if (!value) continue;
            all.push_back(*value);
            if (r.commissioning) by_year[r.commissioning->year].push_back(*value);
        }
        std::size_t n = 0;
        bool used_fallback = false;
        for (auto& r : records) {
            auto& value = getter(r);
            if (value) continue;
            if (all.empty())
                throw DataError(std::string("impute_missing: no complete record for ") + field);
            const auto it = r.commissioning ? by_year.find(r.commissioning->year) : by_year.end();
            if (it != by_year.end() && !it->second.empty()) {
                value = mean_of(it->second);
            } else {
                value = mean_of(all);
                used_fallback = true;
            }
            ++n;
        }
        if (n)
            report.fields.push_back({field, n,
                                     used_fallback ? "same-year mean (overall fallback)" : "same-year mean"});
    };

    if (policy.capacity)
        impute_by_year_mean("capacity_kw", [](auto& r) -> auto& { return r.capacity_kw; });
    if (policy.hub_height)
        impute_by_year_mean("hub_height_m", [](auto& r) -> auto& { return r.hub_height_m; });

    if (policy.rotor_diameter) {
        // OLS fit diameter = a * hub_height + b over records complete in both
        long double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::size_t m = 0;
        for (const auto& r : records) {
            if (!r.hub_height_m || !r.rotor_diameter_m) continue;
            const long double x = *r.hub_height_m, y = *r.rotor_diameter_m;
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++m;
        }
        std::size_t n = 0;
        for (auto& r : records) {
            if (r.rotor_diameter_m) continue;
            if (m == 0) throw DataError("impute_missing: no complete record for rotor_diameter_m");
            if (!r.hub_height_m)
                throw DataError("impute_missing: rotor diameter needs hub height for record " + r.id);
            double a = 0, b = 0;
            const long double det = static_cast<long double>(m) * sxx - sx * sx;
            // guard near-singular fits (all complete records share one hub height)
            if (m >= 2 && std::abs(static_cast<double>(det)) > 1e-9 * static_cast<double>(m * sxx)) {
                a = static_cast<double>((static_cast<long double>(m) * sxy - sx * sy) / det);
                b = static_cast<double>((sy - a * sx) / static_cast<long double>(m));
            } else {
                b = static_cast<double>(sy / static_cast<long double>(m));  // constant fit
            }
            double d = a * *r.hub_height_m + b;
            if (!(d > 0))
                throw DataError("impute_missing: rotor fit produced a non-positive diameter for record " + r.id);
            r.rotor_diameter_m = d;
            ++n;
        }
        if (n) report.fields.push_back({"rotor_diameter_m", n, "OLS on hub height"});
    }
    return report;
}

double specific_power_of(const FleetRecord& record) {
    if (!record.capacity_kw || !record.rotor_diameter_m)
        throw DataError("specific power needs capacity and rotor diameter (record " + record.id + ")");
    return record_sp(*record.capacity_kw, *record.rotor_diameter_m);
}

std::size_t repair_specific_power(std::vector<FleetRecord>& records, double floor_w_m2) {
    struct Peer {
        double capacity;
        double sp;
    };
    std::vector<Peer> peers;
    for (const auto& r : records) {
        if (!r.capacity_kw || !r.rotor_diameter_m) continue;
        const double sp = specific_power_of(r);
        if (sp >= floor_w_m2) peers.push_back({*r.capacity_kw, sp});
    }

    std::size_t repaired = 0;
    for (auto& r : records) {
        if (!r.capacity_kw || !r.rotor_diameter_m) continue;
        if (specific_power_of(r) >= floor_w_m2) continue;

        const double cap = *r.capacity_kw;
        std::vector<double> same;
        for (const auto& p : peers)
            if (p.capacity == cap) same.push_back(p.sp);

        double target_sp;
        if (!same.empty()) {
            target_sp = mean_of(same);
        } else {
            // nearest capacity within ±10%, then global mean
            double best_gap = std::numeric_limits<double>::infinity();
            const Peer* best = nullptr;
            for (const auto& p : peers) {
                const double gap = std::abs(p.capacity - cap);
                if (gap <= 0.10 * cap && gap < best_gap) {
                    best_gap = gap;
                    best = &p;
                }
            }
            if (best) {
                target_sp = best->sp;
            } else if (!peers.empty()) {
                std::vector<double> all;
                all.reserve(peers.size());
                for (const auto& p : peers) all.push_back(p.sp);
                target_sp = mean_of(all);
            } else {
                target_sp = floor_w_m2;  // nothing to learn from: lift to the floor
            }
        }
        r.rotor_diameter_m = diameter_for_sp(cap, target_sp);
        ++repaired;
    }
    return repaired;
}

std::string normalize_name(const std::string& name) {
    std::string out;
    out.reserve(name.size());
    for (std::size_t i = 0; i < name.size();) {
        const auto byte = static_cast<unsigned char>(name[i]);
        char32_t cp = 0;
        std::size_t len = 1;
        if (byte < 0x80) {
            cp = byte;
        } else if ((byte >> 5) == 0x6 && i + 1 < name.size()) {
            cp = ((byte & 0x1F) << 6) | (static_cast<unsigned char>(name[i + 1]) & 0x3F);
            len = 2;
        } else if ((byte >> 4) == 0xE && i + 2 < name.size()) {
            cp = ((byte & 0x0F) << 12) | ((static_cast<unsigned char>(name[i + 1]) & 0x3F) << 6) |
                 (static_cast<unsigned char>(name[i + 2]) & 0x3F);
            len = 3;
        } else {
            i += 1;  // invalid byte: drop
            continue;
        }
        i += len;

        if (cp >= 'A' && cp <= 'Z') cp = cp - 'A' + 'a';
        if ((cp >= 'a' && cp <= 'z') || (cp >= '0' && cp <= '9')) {
            out += static_cast<char>(cp);
            continue;
        }
        // Latin-1 supplement and Latin Extended-A letters fold to their base
        static constexpr struct {
            char32_t lo, hi;
            char base;
        } kFolds[] = {
            {0x00C0, 0x00C5, 'a'}, {0x00E0, 0x00E5, 'a'}, {0x0100, 0x0105, 'a'},
            {0x00C7, 0x00C7, 'c'}, {0x00E7, 0x00E7, 'c'}, {0x0106, 0x010D, 'c'},
            {0x00C8, 0x00CB, 'e'}, {0x00E8, 0x00EB, 'e'}, {0x0112, 0x011B, 'e'},
            {0x00CC, 0x00CF, 'i'}, {0x00EC, 0x00EF, 'i'}, {0x0128, 0x0131, 'i'},
            {0x00D1, 0x00D1, 'n'}, {0x00F1, 0x00F1, 'n'}, {0x0143, 0x014B, 'n'},
            {0x00D2, 0x00D6, 'o'}, {0x00F2, 0x00F6, 'o'}, {0x00D8, 0x00D8, 'o'},
            {0x00F8, 0x00F8, 'o'}, {0x014C, 0x0151, 'o'},
            {0x00D9, 0x00DC, 'u'}, {0x00F9, 0x00FC, 'u'}, {0x0168, 0x0173, 'u'},
            {0x00DD, 0x00DD, 'y'}, {0x00FD, 0x00FD, 'y'}, {0x00FF, 0x00FF, 'y'},
            {0x0179, 0x017E, 'z'}, {0x011E, 0x0123, 'g'}, {0x015A, 0x0161, 's'},
            {0x0162, 0x0167, 't'},
        };
        for (const auto& fold : kFolds) {
            if (cp >= fold.lo && cp <= fold.hi) {
                out += fold.base;
                break;
            }
        }
        // everything else (punctuation, whitespace, symbols) is dropped
    }
    return out;
}

std::vector<NameMatch> match_names(const std::vector<std::string>& sim_names,
                                   const std::vector<std::string>& obs_names) {
    std::unordered_map<std::string, std::vector<std::size_t>> sim_by_norm;
    for (std::size_t i = 0; i < sim_names.size(); ++i)
        sim_by_norm[normalize_name(sim_names[i])].push_back(i);

    std::vector<NameMatch> matches;
    std::unordered_map<std::size_t, std::string> claimed;  // sim index -> obs name
    for (std::size_t j = 0; j < obs_names.size(); ++j) {
        const std::string norm = normalize_name(obs_names[j]);
        const auto it = sim_by_norm.find(norm);
        if (it == sim_by_norm.end()) continue;
        if (it->second.size() > 1) {
            std::string candidates;
            for (std::size_t k : it->second) candidates += " '" + sim_names[k] + "'";
            throw DataError("ambiguous name match: '" + obs_names[j] + "' equals" + candidates);
        }
        const std::size_t sim_idx = it->second.front();
        if (const auto prev = claimed.find(sim_idx); prev != claimed.end())
            throw DataError("ambiguous name match: '" + obs_names[j] + "' and '" + prev->second +
                            "' both equal '" + sim_names[sim_idx] + "'");
        claimed.emplace(sim_idx, obs_names[j]);
        matches.push_back({sim_idx, j, 100});
    }
    std::sort(matches.begin(), matches.end(),
              [](const NameMatch& a, const NameMatch& b) { return a.sim_index < b.sim_index; });
    return matches;
}

void check_fleet_invariants(const std::vector<FleetRecord>& records, double sp_floor_w_m2) {
    for (const auto& r : records) {
        if (!r.complete()) throw DataError("fleet record " + r.id + " is incomplete after repair");
        if (!(*r.capacity_kw > 0)) throw DataError("record " + r.id + ": capacity must be positive");
        if (!(*r.hub_height_m > 0)) throw DataError("record " + r.id + ": hub height must be positive");
        if (!(*r.rotor_diameter_m > 0)) throw DataError("record " + r.id + ": rotor diameter must be positive");
        if (!std::isfinite(r.lat) || !std::isfinite(r.lon))
            throw DataError("record " + r.id + ": location must be finite");
        const double sp = specific_power_of(r);
        if (sp < sp_floor_w_m2 - 1e-9)
            throw DataError("record " + r.id + ": specific power " + format_double(sp) +
                            " W/m² is below the floor");
    }
}

}  // namespace windsim

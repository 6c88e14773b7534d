#include "windsim/cleaning.hpp"

#include <cmath>

#include "windsim/errors.hpp"

namespace windsim {

namespace {

constexpr double kPow10[] = {1, 10, 100, 1000, 10000, 100000, 1000000};

void mask_interval(MaskedSeries& series, RemovalLogEntry& entry, std::size_t begin, std::size_t end) {
    std::size_t masked_now = 0;
    for (std::size_t i = begin; i < end; ++i) {
        if (series.masked[i]) continue;
        series.masked[i] = 1;
        ++masked_now;
    }
    if (masked_now) {
        entry.steps_masked += masked_now;
        entry.intervals.push_back({begin, end});
    }
}

// Calls fn(run_begin, run_end, key) for each maximal run of consecutive
// unmasked steps with equal rounded values. Masked steps break runs.
template <typename Fn>
void for_each_run(const MaskedSeries& series, int decimals, Fn&& fn) {
    const std::size_t n = series.size();
    std::size_t i = 0;
    while (i < n) {
        if (series.masked[i]) {
            ++i;
            continue;
        }
        const std::int64_t key = rounded_key(series.values[i], decimals);
        std::size_t j = i + 1;
        while (j < n && !series.masked[j] && rounded_key(series.values[j], decimals) == key) ++j;
        fn(i, j, key);
        i = j;
    }
}

}  // namespace

std::int64_t rounded_key(double value, int decimals) {
    if (decimals < 0 || decimals > 6) throw DataError("rounded_key: decimals out of range");
    return std::llround(value * kPow10[decimals]);
}

void trim_edge_zeros(MaskedSeries& series, RemovalLog& log, int round_decimals) {
    RemovalLogEntry entry{"trim_edge_zeros", 0, {}};
    const std::size_t n = series.size();

    std::size_t lead = 0;
    while (lead < n && (series.masked[lead] || rounded_key(series.values[lead], round_decimals) == 0))
        ++lead;
    if (lead > 0) mask_interval(series, entry, 0, lead);

    if (lead < n) {  // not all-zero: trim the suffix too
        std::size_t tail = n;
        while (tail > lead &&
               (series.masked[tail - 1] || rounded_key(series.values[tail - 1], round_decimals) == 0))
            --tail;
        if (tail < n) mask_interval(series, entry, tail, n);
    }
    log.entries.push_back(std::move(entry));
}

void remove_constant_runs(MaskedSeries& series, RemovalLog& log, std::size_t min_len_steps,
                          int round_decimals) {
    RemovalLogEntry entry{"constant_run_gt_" + std::to_string(min_len_steps) + "h", 0, {}};
    for_each_run(series, round_decimals, [&](std::size_t begin, std::size_t end, std::int64_t key) {
        if (key != 0 && end - begin > min_len_steps) mask_interval(series, entry, begin, end);
    });
    log.entries.push_back(std::move(entry));
}

void remove_zero_runs(MaskedSeries& series, RemovalLog& log, std::size_t min_len_steps,
                      int round_decimals) {
    RemovalLogEntry entry{"zero_run_gt_" + std::to_string(min_len_steps) + "h", 0, {}};
    for_each_run(series, round_decimals, [&](std::size_t begin, std::size_t end, std::int64_t key) {
        if (key == 0 && end - begin > min_len_steps) mask_interval(series, entry, begin, end);
    });
    log.entries.push_back(std::move(entry));
}

void remove_cf_above_one(MaskedSeries& series, std::span<const double> installed_kw,
                         RemovalLog& log) {
    if (!installed_kw.empty() && installed_kw.size() != series.size())
        throw DataError("remove_cf_above_one: capacity timeline length mismatch");
    RemovalLogEntry entry{"cf_above_one", 0, {}};
    RemovalLogEntry zero_cap{"generation_without_capacity", 0, {}};
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.masked[i]) continue;
        const double cap = installed_kw.empty() ? 1.0 : installed_kw[i];
        if (cap <= 0) {
            if (series.values[i] > 0) mask_interval(series, zero_cap, i, i + 1);
            continue;
        }
        if (series.values[i] > cap) mask_interval(series, entry, i, i + 1);
    }
    log.entries.push_back(std::move(entry));
    log.entries.push_back(std::move(zero_cap));
}

bool enforce_min_length(const MaskedSeries& series, double min_years) {
    const double steps_per_year =
        static_cast<double>(hours_per_year) * static_cast<double>(seconds_per_hour) /
        static_cast<double>(series.axis.step_s);
    const auto required = static_cast<std::size_t>(std::ceil(min_years * steps_per_year));
    return series.unmasked_count() >= required;
}

void interpolate_short_gaps(MaskedSeries& series, std::size_t max_gap_steps, RemovalLog& log) {
    RemovalLogEntry entry{"interpolated_gaps", 0, {}};
    const std::size_t n = series.size();
    std::size_t i = 0;
    while (i < n) {
        if (!series.masked[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && series.masked[j]) ++j;
        const bool interior = i > 0 && j < n;
        if (interior && j - i <= max_gap_steps) {
            const double left = series.values[i - 1];
            const double right = series.values[j];
            const auto span = static_cast<double>(j - i + 1);
            for (std::size_t k = i; k < j; ++k) {
                series.values[k] = left + (right - left) * static_cast<double>(k - i + 1) / span;
                series.masked[k] = 0;
            }
            entry.steps_masked += j - i;  // here: steps restored
            entry.intervals.push_back({i, j});
        }
        i = j;
    }
    log.entries.push_back(std::move(entry));
}

void align_and_mask(std::span<MaskedSeries> simulated, std::span<MaskedSeries> observed) {
    if (observed.empty()) throw DataError("align_and_mask: empty observed group");
    const TimeAxis& axis = observed.front().axis;
    for (const auto& s : observed)
        if (s.axis != axis) throw DataError("align_and_mask: observed time axes differ");
    for (const auto& s : simulated)
        if (s.axis != axis) throw DataError("align_and_mask: simulated and observed time axes differ");

    std::vector<std::uint8_t> union_mask(axis.size, 0);
    for (const auto& s : observed)
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s.masked[i]) union_mask[i] = 1;

    auto apply = [&](MaskedSeries& s) {
        for (std::size_t i = 0; i < s.size(); ++i)
            if (union_mask[i]) s.masked[i] = 1;
    };
    for (auto& s : simulated) apply(s);
    for (auto& s : observed) apply(s);
}

MaskedSeries aggregate_to_hourly(const MaskedSeries& series) {
    if (series.axis.step_s >= seconds_per_hour || seconds_per_hour % series.axis.step_s != 0)
        throw DataError("aggregate_to_hourly: step must divide one hour");
    const auto factor = static_cast<std::size_t>(seconds_per_hour / series.axis.step_s);
    if (series.axis.start % seconds_per_hour != 0)
        throw DataError("aggregate_to_hourly: series must start on a full hour");

    const std::size_t hours = series.size() / factor;
    MaskedSeries out;
    out.axis = TimeAxis{series.axis.start, seconds_per_hour, hours};
    out.values.assign(hours, 0.0);
    out.masked.assign(hours, 0);
    for (std::size_t h = 0; h < hours; ++h) {
        double sum = 0;
        bool any_masked = false;
        for (std::size_t k = 0; k < factor; ++k) {
            const std::size_t i = h * factor + k;
            if (series.masked[i]) {
                any_masked = true;
                break;
            }
            sum += series.values[i];
        }
        if (any_masked) {
            out.masked[h] = 1;
        } else {
            out.values[h] = sum / static_cast<double>(factor);
        }
    }
    return out;
}

CleanResult clean_series(MaskedSeries series, std::span<const double> installed_kw,
                         const CleaningOptions& options) {
    CleanResult result;
    result.series = std::move(series);
    trim_edge_zeros(result.series, result.log, options.round_decimals);
    remove_constant_runs(result.series, result.log, options.constant_run_steps, options.round_decimals);
    remove_zero_runs(result.series, result.log, options.zero_run_steps, options.round_decimals);
    if (options.apply_cf_rule) {
        remove_cf_above_one(result.series, installed_kw, result.log);
    } else {
        result.log.entries.push_back({"cf_above_one", 0, {}});
        result.log.entries.push_back({"generation_without_capacity", 0, {}});
    }
    result.keep = enforce_min_length(result.series, options.min_years);
    return result;
}

}  // namespace windsim

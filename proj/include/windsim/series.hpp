#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "windsim/time.hpp"

namespace windsim {

/// Uniformly spaced UTC time axis.
struct TimeAxis {
    Instant start = 0;
    std::int64_t step_s = seconds_per_hour;
    std::size_t size = 0;

    Instant at(std::size_t i) const { return start + static_cast<std::int64_t>(i) * step_s; }
    Instant last() const { return at(size == 0 ? 0 : size - 1); }

    /// Index of an instant that lies exactly on the axis, nullopt otherwise.
    std::optional<std::size_t> index_of(Instant t) const {
        if (size == 0 || t < start) return std::nullopt;
        const std::int64_t d = t - start;
        if (d % step_s != 0) return std::nullopt;
        const auto i = static_cast<std::size_t>(d / step_s);
        if (i >= size) return std::nullopt;
        return i;
    }

    bool operator==(const TimeAxis&) const = default;
};

/// Pair of (values, masked) spans that statistics and aggregation operate on.
/// masked[i] != 0 means step i is missing or has been removed.
struct SeriesView {
    std::span<const double> values;
    std::span<const std::uint8_t> masked;

    std::size_t size() const { return values.size(); }
    bool is_masked(std::size_t i) const { return masked[i] != 0; }
};

/// Time series on a uniform axis with a removal/missing mask.
struct MaskedSeries {
    TimeAxis axis;
    std::vector<double> values;
    std::vector<std::uint8_t> masked;

    MaskedSeries() = default;
    MaskedSeries(TimeAxis a, std::vector<double> v)
        : axis(a), values(std::move(v)), masked(values.size(), 0) {}
    MaskedSeries(TimeAxis a, std::vector<double> v, std::vector<std::uint8_t> m)
        : axis(a), values(std::move(v)), masked(std::move(m)) {}

    std::size_t size() const { return values.size(); }

    std::size_t unmasked_count() const {
        std::size_t n = 0;
        for (auto m : masked) n += (m == 0);
        return n;
    }

    SeriesView view() const { return {values, masked}; }
};

/// Series over calendar buckets (days or months); bucket spacing is not uniform.
struct BucketSeries {
    std::vector<Instant> starts;
    std::vector<double> values;
    std::vector<std::uint8_t> masked;

    std::size_t size() const { return values.size(); }
    SeriesView view() const { return {values, masked}; }
};

}  // namespace windsim

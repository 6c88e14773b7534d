#include <doctest.h>

#include <random>

#include "windsim/aggregate.hpp"
#include "windsim/errors.hpp"
#include "windsim/stats.hpp"

using namespace windsim;

namespace {

MaskedSeries hourly(std::vector<double> values, Instant start = make_instant(2014, 1, 1)) {
    const TimeAxis axis{start, seconds_per_hour, values.size()};
    return MaskedSeries(axis, std::move(values));
}

}  // namespace

TEST_CASE("to_capacity_factor basics") {
    GenerationSeries gen;
    gen.axis = TimeAxis{make_instant(2014, 1, 1), seconds_per_hour, 4};
    gen.power_kw = {500, 2000, 0, 100};
    gen.installed_kw = {2000, 2000, 2000, 0};
    gen.flags.assign(4, 0);

    const auto cf = to_capacity_factor(gen);
    CHECK(cf.values[0] == doctest::Approx(0.25));
    CHECK(cf.values[1] == doctest::Approx(1.0));
    CHECK(cf.values[2] == 0.0);
    CHECK(cf.masked[3] == 1);  // no capacity yet

    GenerationSeries negative = gen;
    negative.power_kw[0] = -1;
    CHECK_THROWS_AS(to_capacity_factor(negative), DataError);
}

TEST_CASE("spatial aggregation is the capacity-weighted mean") {
    const auto a = hourly({0.2, 0.4});
    const auto b = hourly({0.4, 0.0});
    const std::vector<std::vector<double>> equal{{1000, 1000}, {1000, 1000}};
    const std::vector<MaskedSeries> members{a, b};

    const auto agg = aggregate_spatial(members, equal);
    CHECK(agg.values[0] == doctest::Approx(0.3));

    const std::vector<std::vector<double>> skewed{{1000, 1000}, {3000, 3000}};
    const auto weighted = aggregate_spatial(members, skewed);
    CHECK(weighted.values[1] == doctest::Approx((0.4 * 1000 + 0.0 * 3000) / 4000.0));  // 0.1

    const std::vector<MaskedSeries> single{a};
    const std::vector<std::vector<double>> single_cap{{1000, 1000}};
    CHECK(aggregate_spatial(single, single_cap).values == a.values);

    CHECK_THROWS_AS(aggregate_spatial({}, {}), DataError);
}

TEST_CASE("masked members drop out of the weighted mean") {
    auto a = hourly({0.2, 0.4});
    auto b = hourly({0.6, 0.8});
    b.masked[0] = 1;
    const std::vector<MaskedSeries> members{a, b};
    const std::vector<std::vector<double>> caps{{1000, 1000}, {1000, 1000}};
    const auto agg = aggregate_spatial(members, caps);
    CHECK(agg.values[0] == doctest::Approx(0.2));  // only member a remains
    CHECK(agg.values[1] == doctest::Approx(0.6));

    auto all_masked_a = hourly({0.2});
    auto all_masked_b = hourly({0.3});
    all_masked_a.masked[0] = all_masked_b.masked[0] = 1;
    const std::vector<MaskedSeries> gone{all_masked_a, all_masked_b};
    const std::vector<std::vector<double>> caps1{{1000}, {1000}};
    CHECK(aggregate_spatial(gone, caps1).masked[0] == 1);
}

TEST_CASE("temporal aggregation: daily means in UTC") {
    std::vector<double> two_days(48, 0.5);
    const auto constant = aggregate_temporal(hourly(two_days), TemporalLevel::daily);
    REQUIRE(constant.size() == 2);
    CHECK(constant.values[0] == doctest::Approx(0.5));
    CHECK(constant.starts[0] == make_instant(2014, 1, 1));
    CHECK(constant.starts[1] == make_instant(2014, 1, 2));

    // ramp 0..23 scaled by /46 averages to 0.25
    std::vector<double> ramp(24);
    for (int h = 0; h < 24; ++h) ramp[static_cast<std::size_t>(h)] = h / 46.0;
    const auto daily = aggregate_temporal(hourly(ramp), TemporalLevel::daily);
    REQUIRE(daily.size() == 1);
    CHECK(daily.values[0] == doctest::Approx(0.25));

    // one masked hour: mean over the remaining 23 samples
    auto with_gap = hourly(std::vector<double>(24, 0.5));
    with_gap.masked[7] = 1;
    const auto gap_daily = aggregate_temporal(with_gap, TemporalLevel::daily);
    CHECK(gap_daily.values[0] == doctest::Approx(0.5));
    CHECK(gap_daily.masked[0] == 0);

    // fully masked day is a masked bucket
    auto dead = hourly(std::vector<double>(24, 0.5));
    for (auto& m : dead.masked) m = 1;
    CHECK(aggregate_temporal(dead, TemporalLevel::daily).masked[0] == 1);
}

TEST_CASE("temporal aggregation: monthly buckets by calendar month") {
    // 31 + 28 days of january/february 2014
    const std::size_t hours = (31 + 28) * 24;
    std::vector<double> values(hours);
    for (std::size_t i = 0; i < hours; ++i) values[i] = i < 31 * 24 ? 0.25 : 0.75;
    const auto monthly = aggregate_temporal(hourly(values), TemporalLevel::monthly);
    REQUIRE(monthly.size() == 2);
    CHECK(monthly.starts[0] == make_instant(2014, 1, 1));
    CHECK(monthly.starts[1] == make_instant(2014, 2, 1));
    CHECK(monthly.values[0] == doctest::Approx(0.25));
    CHECK(monthly.values[1] == doctest::Approx(0.75));
}

TEST_CASE("hourly level passes through") {
    const auto series = hourly({0.1, 0.2, 0.3});
    const auto pass = aggregate_temporal(series, TemporalLevel::hourly);
    CHECK(pass.values == series.values);
    CHECK(pass.starts[2] == series.axis.at(2));
}

TEST_CASE("spatial and temporal aggregation commute on unmasked constant-capacity input") {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> cf(0.0, 1.0);
    const std::size_t hours = 24 * 10;
    std::vector<MaskedSeries> members;
    std::vector<std::vector<double>> caps;
    for (int m = 0; m < 3; ++m) {
        std::vector<double> values(hours);
        for (auto& v : values) v = cf(rng);
        members.push_back(hourly(std::move(values)));
        caps.push_back(std::vector<double>(hours, 1000.0 * (m + 1)));
    }

    const auto spatial_then_temporal =
        aggregate_temporal(aggregate_spatial(members, caps), TemporalLevel::daily);

    // temporal first, then weight the daily buckets
    std::vector<BucketSeries> daily;
    for (const auto& m : members) daily.push_back(aggregate_temporal(m, TemporalLevel::daily));
    BucketSeries other;
    other.starts = daily[0].starts;
    for (std::size_t b = 0; b < daily[0].size(); ++b) {
        double weighted = 0, total = 0;
        for (std::size_t m = 0; m < daily.size(); ++m) {
            weighted += daily[m].values[b] * caps[m][0];
            total += caps[m][0];
        }
        other.values.push_back(weighted / total);
        other.masked.push_back(0);
    }
    REQUIRE(other.size() == spatial_then_temporal.size());
    for (std::size_t b = 0; b < other.size(); ++b)
        CHECK(spatial_then_temporal.values[b] == doctest::Approx(other.values[b]).epsilon(1e-12));
}

TEST_CASE("system size counts distinct occupied cells") {
    const Grid grid{40, 1, 10, 1, 4, 4};
    const std::vector<Location> one{{40.1, 10.2}};
    CHECK(system_size(one, grid) == 1);

    const std::vector<Location> same_cell{{40.1, 10.2}, {40.2, 10.1}};
    CHECK(system_size(same_cell, grid) == 1);

    const std::vector<Location> spread{{40.1, 10.2}, {41.0, 11.0}, {43.0, 13.0}};
    CHECK(system_size(spread, grid) == 3);

    CHECK_THROWS_AS(system_size({}, grid), DataError);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "windsim/errors.hpp"
#include "windsim/stats.hpp"

using namespace windsim;

namespace {

// naive direct-summation oracle: r = (E[xy] - E[x]E[y]) / (sd_x * sd_y)
struct OracleStats {
    double r, rmse, mbe;
    std::size_t n;
};

OracleStats oracle(const std::vector<double>& a, const std::vector<double>& b,
                   const std::vector<std::uint8_t>& ma, const std::vector<std::uint8_t>& mb) {
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, se = 0, see = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (ma[i] || mb[i]) continue;
        sx += a[i];
        sy += b[i];
        sxx += a[i] * a[i];
        syy += b[i] * b[i];
        sxy += a[i] * b[i];
        se += a[i] - b[i];
        see += (a[i] - b[i]) * (a[i] - b[i]);
        ++n;
    }
    const double nn = static_cast<double>(n);
    OracleStats out{};
    out.n = n;
    out.r = (sxy / nn - (sx / nn) * (sy / nn)) /
            (std::sqrt(sxx / nn - (sx / nn) * (sx / nn)) * std::sqrt(syy / nn - (sy / nn) * (sy / nn)));
    out.rmse = std::sqrt(see / nn);
    out.mbe = se / nn;
    return out;
}

}  // namespace

TEST_CASE("identical series") {
    const std::vector<double> a{0.1, 0.5, 0.9, 0.3};
    const std::vector<std::uint8_t> m(a.size(), 0);
    const auto metrics = validate_pair({a, m}, {a, m});
    CHECK(*metrics.pearson_r == 1.0);
    CHECK(metrics.rmse == 0.0);
    CHECK(metrics.mbe == 0.0);
    CHECK(metrics.n == 4);
}

TEST_CASE("affine shift: observed exceeds simulated") {
    const std::vector<double> sim{0.1, 0.5, 0.9, 0.3};
    std::vector<double> obs = sim;
    for (auto& x : obs) x += 0.05;
    const std::vector<std::uint8_t> m(sim.size(), 0);
    const auto metrics = validate_pair({sim, m}, {obs, m});
    CHECK(*metrics.pearson_r == doctest::Approx(1.0));
    CHECK(metrics.rmse == doctest::Approx(0.05));
    CHECK(metrics.mbe == doctest::Approx(-0.05));  // simulated minus observed
}

TEST_CASE("pearson affine invariance") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd(0.3, 0.2);
    std::vector<double> a(400), b(400);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = nd(rng);
        b[i] = nd(rng);
    }
    const std::vector<std::uint8_t> m(a.size(), 0);
    const double base = pearson_or_throw({a, m}, {b, m});
    for (double scale : {0.5, 2.0, 17.0}) {
        std::vector<double> scaled(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) scaled[i] = scale * a[i] + 0.123;
        CHECK(pearson_or_throw({scaled, m}, {b, m}) == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("statistics match the naive oracle on masked pairs") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> nd(0.4, 0.25);
    std::bernoulli_distribution masked(0.2);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(300), b(300);
        std::vector<std::uint8_t> ma(300), mb(300);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = nd(rng);
            b[i] = 0.7 * nd(rng) + 0.2 * a[i];
            ma[i] = masked(rng);
            mb[i] = masked(rng);
        }
        const auto metrics = validate_pair({a, ma}, {b, mb});
        const auto expected = oracle(a, b, ma, mb);
        REQUIRE(metrics.n == expected.n);
        CHECK(*metrics.pearson_r == doctest::Approx(expected.r).epsilon(1e-12));
        CHECK(metrics.rmse == doctest::Approx(expected.rmse).epsilon(1e-12));
        CHECK(metrics.mbe == doctest::Approx(expected.mbe).epsilon(1e-12));

        // bias-variance decomposition: rmse^2 = mbe^2 + var(error)
        double err_var = 0;
        {
            std::size_t n = 0;
            double mean_err = 0;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (!ma[i] && !mb[i]) {
                    mean_err += a[i] - b[i];
                    ++n;
                }
            mean_err /= static_cast<double>(n);
            for (std::size_t i = 0; i < a.size(); ++i)
                if (!ma[i] && !mb[i])
                    err_var += ((a[i] - b[i]) - mean_err) * ((a[i] - b[i]) - mean_err);
            err_var /= static_cast<double>(n);
        }
        CHECK(metrics.rmse * metrics.rmse ==
              doctest::Approx(metrics.mbe * metrics.mbe + err_var).epsilon(1e-9));
    }
}

TEST_CASE("degenerate inputs") {
    const std::vector<double> flat{0.5, 0.5, 0.5};
    const std::vector<double> varying{0.1, 0.5, 0.8};
    const std::vector<std::uint8_t> m(3, 0);
    CHECK(!pearson({flat, m}, {varying, m}).has_value());  // zero variance: flagged, no crash
    CHECK_THROWS_AS(pearson_or_throw({flat, m}, {varying, m}), DataError);

    const std::vector<double> one{0.5};
    const std::vector<std::uint8_t> m1{0};
    CHECK_THROWS_AS(pearson({one, m1}, {one, m1}), DataError);  // n < 2
    CHECK(rmse({one, m1}, {one, m1}) == 0.0);                   // rmse/mbe allow n = 1

    const std::vector<std::uint8_t> all_masked{1};
    CHECK_THROWS_AS(rmse({one, all_masked}, {one, all_masked}), DataError);
}

TEST_CASE("notch interval on the documented example") {
    const std::vector<double> samples{1, 2, 3, 4, 5};
    const auto notch = notch_interval(samples);
    CHECK(notch.median == 3.0);
    CHECK(notch.iqr == 2.0);
    CHECK(notch.n == 5);
    const double half = 1.57 * 2.0 / std::sqrt(5.0);
    CHECK(notch.lo == doctest::Approx(3.0 - half));  // ~1.5959
    CHECK(notch.hi == doctest::Approx(3.0 + half));  // ~4.4041
}

TEST_CASE("zero-iqr notch collapses to the median") {
    const std::vector<double> same{1, 1, 1, 1};
    const auto notch = notch_interval(same);
    CHECK(notch.lo == 1.0);
    CHECK(notch.median == 1.0);
    CHECK(notch.hi == 1.0);
}

TEST_CASE("notch width shrinks as 1/sqrt(n)") {
    // fixed value spread, growing sample count
    auto width_for = [](std::size_t n) {
        std::vector<double> samples;
        for (std::size_t i = 0; i < n; ++i)
            samples.push_back(static_cast<double>(i % 100));  // fixed IQR as n grows
        const auto notch = notch_interval(samples);
        return notch.hi - notch.lo;
    };
    const double w100 = width_for(100);
    const double w400 = width_for(400);
    CHECK(w400 == doctest::Approx(w100 / 2.0).epsilon(0.02));
}

TEST_CASE("medians_differ") {
    const std::vector<double> a{1, 2, 3, 4, 5};
    CHECK(!medians_differ(a, a));

    std::vector<double> lo, hi;
    for (int i = 0; i < 25; ++i) {
        lo.push_back(0.1 + 0.001 * i);
        hi.push_back(5.0 + 0.001 * i);
    }
    CHECK(medians_differ(lo, hi));
    CHECK(medians_differ(hi, lo));  // symmetric

    // wide overlapping notches: close medians, large spread, small n
    const std::vector<double> x{0.70, 0.75, 0.82, 0.90, 0.95};
    const std::vector<double> y{0.65, 0.72, 0.77, 0.88, 0.93};
    CHECK(!medians_differ(x, y));
}

TEST_CASE("quantiles use linear interpolation") {
    const std::vector<double> sorted{1, 2, 3, 4};
    CHECK(quantile_sorted(sorted, 0.5) == doctest::Approx(2.5));
    CHECK(quantile_sorted(sorted, 0.25) == doctest::Approx(1.75));
    CHECK(quantile_sorted(sorted, 0.0) == 1.0);
    CHECK(quantile_sorted(sorted, 1.0) == 4.0);
}

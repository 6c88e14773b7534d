#include <doctest.h>

#include <random>

#include "windsim/bias_correction.hpp"
#include "windsim/errors.hpp"
#include "windsim/series.hpp"
#include "windsim/stats.hpp"

using namespace windsim;

TEST_CASE("correction factor arithmetic") {
    const std::vector<double> series{7.5, 7.5, 7.5};
    CHECK(correction_factor(7.5, series, 100, 100).factor == doctest::Approx(1.0));

    const std::vector<double> eights{8, 8, 8, 8};
    CHECK(correction_factor(6.0, eights, 100, 100).factor == doctest::Approx(0.75));

    const std::vector<double> mixed{8, 9, 10};
    const auto cf = correction_factor(9.3, mixed, 50, 50);
    CHECK(cf.factor == doctest::Approx(9.3 / 9.0));
    CHECK(cf.reanalysis_mean == doctest::Approx(9.0));
}

TEST_CASE("height mismatch is a hard error") {
    const std::vector<double> series{8, 9, 10};
    CHECK_THROWS_AS(correction_factor(9.3, series, 50, 100), DataError);
    CHECK_THROWS_AS(correction_factor(9.3, series, 100, 50), DataError);
}

TEST_CASE("degenerate series are rejected") {
    CHECK_THROWS_AS(correction_factor(9.3, std::vector<double>{}, 100, 100), DataError);
    CHECK_THROWS_AS(correction_factor(9.3, std::vector<double>{0, 0, 0}, 100, 100), DataError);
    CHECK_THROWS_AS(correction_factor(0.0, std::vector<double>{8, 9}, 100, 100), DataError);
}

TEST_CASE("apply_correction scales values") {
    CorrectionFactor cf{0.5, 0, 0};
    const auto scaled = apply_correction(std::vector<double>{2, 4}, cf);
    CHECK(scaled == std::vector<double>{1, 2});

    CorrectionFactor identity{1.0, 0, 0};
    const std::vector<double> series{3.2, 1.1, 9.9};
    CHECK(apply_correction(series, identity) == series);
}

TEST_CASE("mean restoration and shape preservation") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> speed(0.5, 25.0);
    std::uniform_real_distribution<double> target(3.0, 12.0);

    std::vector<double> reference(500);
    for (auto& x : reference) x = speed(rng);
    const std::vector<std::uint8_t> no_mask(reference.size(), 0);

    for (int k = 0; k < 300; ++k) {
        std::vector<double> series(500);
        for (auto& x : series) x = speed(rng);
        const double gwa_mean = target(rng);
        const auto cf = correction_factor(gwa_mean, series, 100, 100);
        const auto corrected = apply_correction(series, cf);

        long double sum = 0;
        for (double x : corrected) sum += x;
        const double mean = static_cast<double>(sum / static_cast<long double>(corrected.size()));
        CHECK(mean == doctest::Approx(gwa_mean).epsilon(1e-9));

        // a positive scale factor cannot change the correlation against any reference
        const double r_before = pearson_or_throw({series, no_mask}, {reference, no_mask});
        const double r_after = pearson_or_throw({corrected, no_mask}, {reference, no_mask});
        CHECK(r_after == doctest::Approx(r_before).epsilon(1e-12));
    }
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "windsim/errors.hpp"
#include "windsim/wind_math.hpp"

using namespace windsim;

TEST_CASE("effective speed") {
    CHECK(effective_speed(3, 4) == doctest::Approx(5.0));
    CHECK(effective_speed(0, 0) == 0.0);
    CHECK(effective_speed(1, 1) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(effective_speed(std::nan(""), 1.0), DataError);
    CHECK_THROWS_AS(effective_speed(1.0, std::numeric_limits<double>::infinity()), DataError);
}

TEST_CASE("effective speed symmetry") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-30, 30);
    for (int i = 0; i < 200; ++i) {
        const double u = dist(rng), v = dist(rng);
        CHECK(effective_speed(u, v) == effective_speed(v, u));
        CHECK(effective_speed(u, v) == effective_speed(-u, v));
    }
}

TEST_CASE("hellmann exponent closed form") {
    const HeightPair h{10, 100};
    CHECK(hellmann_exponent(5, 5, h).alpha == doctest::Approx(0.0));
    CHECK(hellmann_exponent(5, 10, h).alpha == doctest::Approx(std::log(2.0) / std::log(10.0)));
    // invert the power law: v_hi = v_lo * (h_hi/h_lo)^0.14
    const double v_hi = 5.0 * std::pow(10.0, 0.14);
    CHECK(hellmann_exponent(5, v_hi, h).alpha == doctest::Approx(0.14).epsilon(1e-12));
}

TEST_CASE("hellmann fallback and clamping") {
    const HeightPair h{10, 100};
    const auto calm = hellmann_exponent(0.05, 8.0, h);
    CHECK(calm.fallback);
    CHECK(calm.alpha == doctest::Approx(neutral_alpha));

    // extreme shear clamps to the upper bound
    const auto steep = hellmann_exponent(0.2, 30.0, HeightPair{50, 60});
    CHECK(steep.clamped);
    CHECK(steep.alpha == alpha_max);

    const auto inverted = hellmann_exponent(30.0, 0.2, HeightPair{50, 60});
    CHECK(inverted.clamped);
    CHECK(inverted.alpha == alpha_min);

    CHECK_THROWS_AS(hellmann_exponent(5, 6, HeightPair{100, 10}), DataError);
}

TEST_CASE("extrapolation") {
    CHECK(extrapolate_to_hub(7.3, 100, 0.2, 100) == 7.3);       // hub == reference
    CHECK(extrapolate_to_hub(7.3, 100, 0.0, 140) == 7.3);       // constant profile
    CHECK(extrapolate_to_hub(8, 100, 1.0 / 7.0, 120) ==
          doctest::Approx(8.0 * std::pow(1.2, 1.0 / 7.0)));     // ~8.2113
    CHECK_THROWS_AS(extrapolate_to_hub(-1, 100, 0.1, 120), DataError);
    CHECK_THROWS_AS(extrapolate_to_hub(8, 0, 0.1, 120), DataError);
}

TEST_CASE("round trip recovers the upper speed") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> speed(0.5, 30.0);
    std::uniform_real_distribution<double> shear_dist(-0.95, 1.95);
    std::uniform_real_distribution<double> h_lo_dist(8.0, 12.0);
    std::uniform_real_distribution<double> h_hi_dist(95.0, 150.0);
    int accepted = 0;
    while (accepted < 2000) {
        const HeightPair h{h_lo_dist(rng), h_hi_dist(rng)};
        const double v_hi = speed(rng);
        const double v_lo = v_hi * std::pow(h.hi_m / h.lo_m, -shear_dist(rng));
        if (v_lo < 0.5 || v_lo > 30.0) continue;
        ++accepted;
        const auto shear = hellmann_exponent(v_lo, v_hi, h);
        REQUIRE(!shear.fallback);
        REQUIRE(!shear.clamped);
        const double recovered = extrapolate_to_hub(v_lo, h.lo_m, shear.alpha, h.hi_m);
        CHECK(recovered == doctest::Approx(v_hi).epsilon(1e-9));
    }
}

TEST_CASE("monotone in hub height for positive shear") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> alpha_dist(0.01, 1.0);
    std::uniform_real_distribution<double> hub_dist(50, 200);
    for (int i = 0; i < 200; ++i) {
        const double alpha = alpha_dist(rng);
        double hub1 = hub_dist(rng), hub2 = hub_dist(rng);
        if (hub1 > hub2) std::swap(hub1, hub2);
        CHECK(extrapolate_to_hub(8, 50, alpha, hub2) >= extrapolate_to_hub(8, 50, alpha, hub1));
    }
}

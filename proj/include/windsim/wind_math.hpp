#pragma once

namespace windsim {

/// The two reanalysis measurement heights, meters above ground.
struct HeightPair {
    double lo_m = 10.0;
    double hi_m = 100.0;
};

/// Below this speed the log-ratio shear estimate is numerically unstable and
/// the neutral-profile exponent is used instead.
inline constexpr double speed_epsilon_ms = 0.1;
inline constexpr double neutral_alpha = 1.0 / 7.0;
inline constexpr double alpha_min = -1.0;
inline constexpr double alpha_max = 2.0;

struct ShearExponent {
    double alpha = neutral_alpha;
    bool fallback = false;  // a speed was below speed_epsilon_ms
    bool clamped = false;   // raw exponent fell outside [alpha_min, alpha_max]
};

/// Euclidean norm of the two wind components. Throws DataError on non-finite input.
double effective_speed(double u_ms, double v_ms);

/// Power-law shear exponent from speeds at two heights:
///   alpha = ln(v_hi / v_lo) / ln(h_hi / h_lo), clamped to [alpha_min, alpha_max].
ShearExponent hellmann_exponent(double v_lo_ms, double v_hi_ms, const HeightPair& heights);

/// v_ref * (hub / h_ref)^alpha
double extrapolate_to_hub(double v_ref_ms, double h_ref_m, double alpha, double hub_m);

}  // namespace windsim

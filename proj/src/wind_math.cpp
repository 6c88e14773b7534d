#include "windsim/wind_math.hpp"

#include <cmath>
#include <string>

#include "windsim/errors.hpp"

namespace windsim {

double effective_speed(double u_ms, double v_ms) {
    if (!std::isfinite(u_ms) || !std::isfinite(v_ms))
        throw DataError("effective_speed: non-finite wind component");
    return std::hypot(u_ms, v_ms);
}

ShearExponent hellmann_exponent(double v_lo_ms, double v_hi_ms, const HeightPair& heights) {
    if (!(heights.lo_m > 0) || !(heights.hi_m > heights.lo_m))
        throw DataError("hellmann_exponent: heights must satisfy 0 < lo < hi");
    if (!std::isfinite(v_lo_ms) || !std::isfinite(v_hi_ms))
        throw DataError("hellmann_exponent: non-finite speed");

    ShearExponent out;
    if (v_lo_ms <= speed_epsilon_ms || v_hi_ms <= speed_epsilon_ms) {
        out.alpha = neutral_alpha;
        out.fallback = true;
        return out;
    }
    double alpha = std::log(v_hi_ms / v_lo_ms) / std::log(heights.hi_m / heights.lo_m);
    if (alpha < alpha_min) {
        alpha = alpha_min;
        out.clamped = true;
    } else if (alpha > alpha_max) {
        alpha = alpha_max;
        out.clamped = true;
    }
    out.alpha = alpha;
    return out;
}

double extrapolate_to_hub(double v_ref_ms, double h_ref_m, double alpha, double hub_m) {
    if (!(v_ref_ms >= 0)) throw DataError("extrapolate_to_hub: negative reference speed");
    if (!(h_ref_m > 0) || !(hub_m > 0))
        throw DataError("extrapolate_to_hub: heights must be positive");
    if (hub_m == h_ref_m || alpha == 0.0) return v_ref_ms;
    return v_ref_ms * std::pow(hub_m / h_ref_m, alpha);
}

}  // namespace windsim

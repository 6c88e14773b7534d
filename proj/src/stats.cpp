#include "windsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "windsim/errors.hpp"

namespace windsim {

namespace {

// Joint iteration over the unmasked intersection of two views.
// Accumulation is done in long double so that exactly collinear inputs
// produce a correlation of exactly 1 after the final rounding.
struct JointSums {
    long double sum_a = 0, sum_b = 0;
    std::size_t n = 0;
};

JointSums joint_sums(SeriesView a, SeriesView b) {
    if (a.size() != b.size()) throw DataError("statistics: series lengths differ");
    JointSums s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.is_masked(i) || b.is_masked(i)) continue;
        s.sum_a += a.values[i];
        s.sum_b += b.values[i];
        ++s.n;
    }
    return s;
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw DataError("quantile of an empty sample");
    if (p <= 0) return sorted.front();
    if (p >= 1) return sorted.back();
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - std::floor(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::optional<double> pearson(SeriesView sim, SeriesView obs) {
    const JointSums s = joint_sums(sim, obs);
    if (s.n < 2) throw DataError("pearson: fewer than 2 jointly unmasked steps");
    const long double mean_a = s.sum_a / static_cast<long double>(s.n);
    const long double mean_b = s.sum_b / static_cast<long double>(s.n);
    long double num = 0, da = 0, db = 0;
    for (std::size_t i = 0; i < sim.size(); ++i) {
        if (sim.is_masked(i) || obs.is_masked(i)) continue;
        const long double x = sim.values[i] - mean_a;
        const long double y = obs.values[i] - mean_b;
        num += x * y;
        da += x * x;
        db += y * y;
    }
    if (da <= 0 || db <= 0) return std::nullopt;  // zero variance: correlation undefined
    double r = static_cast<double>(num / std::sqrt(da * db));
    return std::clamp(r, -1.0, 1.0);
}

double pearson_or_throw(SeriesView sim, SeriesView obs) {
    const auto r = pearson(sim, obs);
    if (!r) throw DataError("pearson: zero variance, correlation undefined");
    return *r;
}

double rmse(SeriesView sim, SeriesView obs) {
    if (sim.size() != obs.size()) throw DataError("statistics: series lengths differ");
    long double sq = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < sim.size(); ++i) {
        if (sim.is_masked(i) || obs.is_masked(i)) continue;
        const long double e = static_cast<long double>(sim.values[i]) - obs.values[i];
        sq += e * e;
        ++n;
    }
    if (n == 0) throw DataError("rmse: no jointly unmasked steps");
    return static_cast<double>(std::sqrt(sq / static_cast<long double>(n)));
}

double mbe(SeriesView sim, SeriesView obs) {
    if (sim.size() != obs.size()) throw DataError("statistics: series lengths differ");
    long double sum = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < sim.size(); ++i) {
        if (sim.is_masked(i) || obs.is_masked(i)) continue;
        sum += static_cast<long double>(sim.values[i]) - obs.values[i];
        ++n;
    }
    if (n == 0) throw DataError("mbe: no jointly unmasked steps");
    return static_cast<double>(sum / static_cast<long double>(n));
}

ValidationMetrics validate_pair(SeriesView sim, SeriesView obs) {
    ValidationMetrics m;
    m.rmse = rmse(sim, obs);
    m.mbe = mbe(sim, obs);
    const JointSums s = joint_sums(sim, obs);
    m.n = s.n;
    if (s.n >= 2) m.pearson_r = pearson(sim, obs);
    return m;
}

NotchInterval notch_interval(std::span<const double> samples, double notch_constant) {
    if (samples.empty()) throw DataError("notch_interval of an empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    NotchInterval notch;
    notch.n = sorted.size();
    notch.median = quantile_sorted(sorted, 0.5);
    notch.iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    const double half_width = notch_constant * notch.iqr / std::sqrt(static_cast<double>(notch.n));
    notch.lo = notch.median - half_width;
    notch.hi = notch.median + half_width;
    return notch;
}

bool medians_differ(std::span<const double> a, std::span<const double> b, double notch_constant) {
    const NotchInterval na = notch_interval(a, notch_constant);
    const NotchInterval nb = notch_interval(b, notch_constant);
    return na.hi < nb.lo || nb.hi < na.lo;
}

}  // namespace windsim

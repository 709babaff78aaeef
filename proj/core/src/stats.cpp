#include "rwrange/stats.hpp"

#include <cmath>

#include "rwrange/errors.hpp"

namespace rwrange {

Interval wilson_interval(double successes, std::uint64_t trials, double z) {
    RWRANGE_REQUIRE(trials > 0, InvalidInterval, "wilson interval needs trials > 0");
    const double n = static_cast<double>(trials);
    const double p = successes / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    double lo = center - half;
    double hi = center + half;
    if (lo < 0.0) lo = 0.0;
    if (hi > 1.0) hi = 1.0;
    return {lo, hi};
}

MeanCi mean_ci(std::span<const double> sample, double z) {
    RWRANGE_REQUIRE(!sample.empty(), InvalidInterval, "mean of empty sample");
    double sum = 0.0;
    for (double v : sample) sum += v;
    const double n = static_cast<double>(sample.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : sample) ss += (v - mean) * (v - mean);
    const double var = sample.size() > 1 ? ss / (n - 1.0) : 0.0;
    MeanCi ci;
    ci.mean = mean;
    ci.stddev = std::sqrt(var);
    ci.halfwidth = z * ci.stddev / std::sqrt(n);
    return ci;
}

PowerLawFit fit_power_law(std::span<const std::pair<double, double>> xy) {
    RWRANGE_REQUIRE(xy.size() >= 3, InsufficientGrid,
                    "power-law fit needs at least 3 grid points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : xy) {
        RWRANGE_REQUIRE(x > 0.0 && y > 0.0, InsufficientGrid,
                        "power-law fit needs positive samples");
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(xy.size());
    const double sxx_c = sxx - sx * sx / n;
    RWRANGE_REQUIRE(sxx_c > 0.0, InsufficientGrid, "degenerate grid for power-law fit");

    PowerLawFit fit;
    fit.points = xy.size();
    fit.slope = (sxy - sx * sy / n) / sxx_c;
    fit.intercept = (sy - fit.slope * sx) / n;

    double rss = 0.0;
    for (const auto& [x, y] : xy) {
        const double r = std::log(y) - (fit.intercept + fit.slope * std::log(x));
        rss += r * r;
    }
    fit.residual_rms = std::sqrt(rss / n);
    const double sigma2 = xy.size() > 3 ? rss / (n - 2.0) : 0.0;
    fit.slope_stderr = std::sqrt(sigma2 / sxx_c);
    return fit;
}

} // namespace rwrange

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rwrange {

// z quantile for two-sided 99% coverage.
inline constexpr double kZ99 = 2.5758293035489004;
// z quantile for two-sided 95% coverage.
inline constexpr double kZ95 = 1.959963984540054;

struct Interval {
    double lo{0.0};
    double hi{0.0};
    double width() const { return hi - lo; }
    bool contains(double v) const { return lo <= v && v <= hi; }
};

/// Wilson score interval for a binomial proportion (successes out of trials).
Interval wilson_interval(double successes, std::uint64_t trials, double z = kZ99);

struct MeanCi {
    double mean{0.0};
    double stddev{0.0};
    double halfwidth{0.0}; // z * stddev / sqrt(n)
    Interval interval() const { return {mean - halfwidth, mean + halfwidth}; }
};

/// Normal-approximation CI for the mean of a sample.
MeanCi mean_ci(std::span<const double> sample, double z = kZ99);

struct PowerLawFit {
    double slope{0.0};       // d log(y) / d log(x)
    double intercept{0.0};   // log-space intercept
    double slope_stderr{0.0};
    double residual_rms{0.0};
    std::size_t points{0};
};

/// Ordinary least squares on (log x, log y). All x, y must be positive;
/// needs at least 3 points (InsufficientGrid otherwise).
PowerLawFit fit_power_law(std::span<const std::pair<double, double>> xy);

} // namespace rwrange

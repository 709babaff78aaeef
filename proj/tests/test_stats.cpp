#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "rwrange/serialization.hpp"
#include "rwrange/stats.hpp"

using namespace rwrange;
using namespace rwrange::testing;

TEST_CASE("wilson interval") {
    auto iv = wilson_interval(50, 100);
    CHECK(iv.lo < 0.5);
    CHECK(iv.hi > 0.5);
    CHECK(iv.lo > 0.35);
    CHECK(iv.hi < 0.65);

    auto zero = wilson_interval(0, 1000);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi < 0.01);

    auto full = wilson_interval(1000, 1000);
    CHECK(full.hi > 1.0 - 1e-12);
    CHECK(full.lo > 0.99);

    CHECK_THROWS_AS((void)wilson_interval(1, 0), Error);
}

TEST_CASE("wilson narrows with samples") {
    double prev = 1.0;
    for (std::uint64_t n : {100ull, 1000ull, 10000ull}) {
        auto iv = wilson_interval(0.3 * double(n), n);
        CHECK(iv.width() < prev);
        prev = iv.width();
    }
}

TEST_CASE("mean ci") {
    std::vector<double> sample{1.0, 1.0, 1.0};
    auto ci = mean_ci(sample);
    CHECK(ci.mean == 1.0);
    CHECK(ci.halfwidth == 0.0);

    std::vector<double> spread{0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0};
    auto c2 = mean_ci(spread);
    CHECK(close_rel(c2.mean, 0.5));
    CHECK(c2.halfwidth > 0.0);
}

TEST_CASE("power law fit recovers exact slopes") {
    std::vector<std::pair<double, double>> pts;
    for (double x : {2.0, 4.0, 8.0, 16.0, 32.0}) pts.emplace_back(x, 3.0 * std::pow(x, -1.5));
    auto fit = fit_power_law(pts);
    CHECK(std::fabs(fit.slope + 1.5) < 1e-12);
    CHECK(std::fabs(std::exp(fit.intercept) - 3.0) < 1e-12);
    CHECK(fit.residual_rms < 1e-12);

    std::vector<std::pair<double, double>> two{{1.0, 1.0}, {2.0, 2.0}};
    CHECK_THROWS_AS((void)fit_power_law(two), Error);
    std::vector<std::pair<double, double>> neg{{1.0, 1.0}, {2.0, -2.0}, {3.0, 1.0}};
    CHECK_THROWS_AS((void)fit_power_law(neg), Error);
}

TEST_CASE("double formatting round trips") {
    for (double v : {0.1, 1.0 / 3.0, 2.0 / 3.0, 6.0 / 7.0, 1e-12, 123456.789}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(std::nan("")) == "nan");
}

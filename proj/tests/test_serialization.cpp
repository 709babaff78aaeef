#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "rwrange/builders.hpp"
#include "rwrange/oracle.hpp"
#include "rwrange/serialization.hpp"

using namespace rwrange;
using namespace rwrange::testing;

TEST_CASE("reports serialize deterministically") {
    auto t4 = LayeredTree::regular(4);
    auto profile = certified_profile(t4, 0, 20);
    CHECK(report_json(profile) == report_json(profile));
    CHECK(report_csv(profile) == report_csv(profile));

    McOptions opt;
    opt.trials = 150;
    opt.seed = 4;
    auto report = expected_range_mc(t4, {}, 300, opt);
    const std::string a = report_json(report);
    auto report2 = expected_range_mc(t4, {}, 300, opt);
    CHECK(a == report_json(report2));
    CHECK(report_csv(report) == report_csv(report2));
}

TEST_CASE("csv headers and shapes") {
    auto t4 = LayeredTree::regular(4);
    auto profile = certified_profile(t4, 0, 3);
    const std::string csv = report_csv(profile);
    CHECK(csv.rfind("n,rho,lo,hi\n", 0) == 0);
    // header + 3 rows
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    McOptions opt;
    opt.trials = 120;
    opt.seed = 9;
    auto report = expected_range_mc(t4, {}, 50, opt);
    const std::string rows = report_csv(report);
    CHECK(rows.rfind("trial,n,range,final_distance\n", 0) == 0);
    CHECK(std::count(rows.begin(), rows.end(), '\n') == 121);
}

TEST_CASE("fluctuation csv columns") {
    FluctuationParams params;
    params.k1 = 4;
    params.stages = 1;
    params.trials = 200;
    params.seed = 2;
    params.slack = 0.09;
    params.jobs = 2;
    auto report = fluctuation_search(params);
    const std::string csv = report_csv(report);
    CHECK(csv.rfind("stage,k,estimate,ci_lo,ci_hi,target\n", 0) == 0);
    const std::string json = report_json(report);
    CHECK(json.find("\"final_radii\"") != std::string::npos);
    CHECK(json == report_json(report));
}

TEST_CASE("oracle law dump carries exact numerators") {
    auto tri = cycle_graph(3);
    auto law = enumerate_range_law(tri, 0, 3);
    const std::string json = report_json(law);
    CHECK(json.find("\"denominator\"") != std::string::npos);
    CHECK(json.find("\"numerator\"") != std::string::npos);
    CHECK(json == report_json(law));
}

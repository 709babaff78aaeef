#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rwrange/graph.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* env = std::getenv("RWRANGE_CLI");
    REQUIRE_MESSAGE(env != nullptr, "RWRANGE_CLI must point at the rwrange binary");
    return env;
}

int run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), ("missing file " + p.string()).c_str());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("rwrange_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("build emits a loadable edge list") {
    auto dir = fresh_dir("build");
    REQUIRE(run_cli("build --family gasket --level 1 --out " + dir.string()) == 0);
    auto g = rwrange::read_edge_list_file((dir / "graph.edges").string());
    CHECK(g.vertex_count() == 6);
    CHECK(g.edge_count() == 9);
    CHECK(fs::exists(dir / "build.json"));
    CHECK(fs::exists(dir / "resolved_config.json"));
    CHECK(fs::exists(dir / "run.log"));
}

TEST_CASE("resist profile converges to the T4 fixed point") {
    auto dir = fresh_dir("resist");
    REQUIRE(run_cli("resist --family t4 --n-max 50 --out " + dir.string()) == 0);
    const std::string csv = slurp(dir / "resist.csv");
    // last line: n=50 enclosure around 3/8
    std::istringstream lines(csv);
    std::string line, last;
    std::getline(lines, line); // header
    CHECK(line == "n,rho,lo,hi");
    while (std::getline(lines, line)) {
        if (!line.empty()) last = line;
    }
    std::istringstream cells(last);
    std::string cell;
    std::getline(cells, cell, ',');
    CHECK(cell == "50");
    std::getline(cells, cell, ',');
    const double rho = std::stod(cell);
    CHECK(rho > 0.3749);
    CHECK(rho < 0.3751);
}

TEST_CASE("oracle subcommand dumps the triangle law") {
    auto dir = fresh_dir("oracle");
    REQUIRE(run_cli("oracle --graph triangle --n 3 --out " + dir.string()) == 0);
    const std::string json = slurp(dir / "oracle.json");
    CHECK(json.find("\"expected_range\": 2.5") != std::string::npos);
    CHECK(json.find("\"denominator\": \"8\"") != std::string::npos);
}

TEST_CASE("same config gives byte-identical reports") {
    auto dir1 = fresh_dir("det1");
    auto dir2 = fresh_dir("det2");
    const std::string args = "walk --family t3 --n 400 --trials 200 --seed 9 ";
    REQUIRE(run_cli(args + "--jobs 1 --out " + dir1.string()) == 0);
    REQUIRE(run_cli(args + "--jobs 2 --out " + dir2.string()) == 0);
    CHECK(slurp(dir1 / "walk.json") == slurp(dir2 / "walk.json"));
    CHECK(slurp(dir1 / "walk.csv") == slurp(dir2 / "walk.csv"));
}

TEST_CASE("config file values are used unless flags override") {
    auto dir = fresh_dir("config");
    const fs::path cfg = dir / "cfg.json";
    {
        std::ofstream out(cfg);
        out << "{\"graph\": \"triangle\", \"n\": 4, \"base\": 0}\n";
    }
    REQUIRE(run_cli("--config " + cfg.string() + " oracle --out " + dir.string()) == 0);
    const std::string a = slurp(dir / "oracle.json");
    CHECK(a.find("\"horizon\": 4") != std::string::npos);

    auto dir2 = fresh_dir("config2");
    REQUIRE(run_cli("--config " + cfg.string() + " oracle --n 2 --out " + dir2.string()) == 0);
    const std::string b = slurp(dir2 / "oracle.json");
    CHECK(b.find("\"horizon\": 2") != std::string::npos); // flag wins
}

TEST_CASE("exit codes distinguish validation from budget") {
    auto dir = fresh_dir("codes");
    CHECK(run_cli("resist --family nope --out " + dir.string()) == 2);
    CHECK(run_cli("build --family lattice --side 2000 --budget-vertices 1000 --out " +
                  dir.string()) == 3);
    CHECK(run_cli("oracle --graph triangle --n 40 --out " + dir.string()) == 3);
    CHECK(run_cli("laws --mode nonsense --family t3 --out " + dir.string()) == 2);
}

TEST_CASE("fluct subcommand emits stage tables") {
    auto dir = fresh_dir("fluct");
    REQUIRE(run_cli("fluct --n1 4 --n2 8 --k1 4 --stages 1 --slack 0.09 --trials 200 --seed 7 "
                    "--jobs 2 --out " +
                    dir.string()) == 0);
    const std::string csv = slurp(dir / "fluct.csv");
    CHECK(csv.rfind("stage,k,estimate,ci_lo,ci_hi,target\n", 0) == 0);
    const std::string json = slurp(dir / "fluct.json");
    CHECK(json.find("\"final_radii\"") != std::string::npos);
}

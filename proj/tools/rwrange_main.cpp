// rwrange: build graph families, certify resistances, and run range
// experiments from the command line. Reports are deterministic given the
// resolved config; timestamps go to run.log only.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rwrange/builders.hpp"
#include "rwrange/oracle.hpp"
#include "rwrange/range_laws.hpp"
#include "rwrange/serialization.hpp"
#include "rwrange/uniformity.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rwrange;

namespace {

struct Options {
    std::string config_path;
    std::string out_dir = "out";
    std::string family = "t4";
    std::string graph_name; // oracle subcommand
    std::string core_path;  // yn family core edge list
    std::uint32_t dim = 2;
    std::uint32_t side = 9;
    std::uint32_t level = 2;
    std::uint32_t depth = 6;
    std::uint32_t base = 0; // base vertex / layer
    std::uint32_t big_n = 4;
    std::uint32_t n1 = 4, n2 = 8, k1 = 8, stages = 4;
    std::vector<std::uint32_t> radii;
    std::uint64_t n = 1000;
    std::uint32_t n_max = 50;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    double epsilon = 0.05;
    double slack = 0.05;
    double f_lo = -1.0, f_hi = -1.0; // [1-F2, 1-F1]; negative = derive from family
    std::string mode = "weak";      // laws: weak|bridge|tail; ucheck: sweep|recurrence|alpha
    int jobs = 1;
    std::uint64_t budget_vertices = kDefaultVertexBudget;
    std::uint64_t budget_steps = 4'000'000'000ULL;
};

std::ofstream* g_log = nullptr;

void log_line(const std::string& msg) {
    if (!g_log) return;
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    (*g_log) << "[" << ms << "] " << msg << "\n";
    g_log->flush();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    RWRANGE_REQUIRE(out.good(), ConfigInvalid, "cannot write " + path.string());
    out << content;
    log_line("wrote " + path.string());
}

// A layered family, an attached family, or an explicit graph.
struct Family {
    std::optional<LayeredTree> layered;
    std::optional<AttachedTree> attached;
    std::optional<WeightedGraph> graph;
    VertexId base_vertex = 0;
};

Family make_family(const Options& opt) {
    Family fam;
    const std::string& f = opt.family;
    auto parse_suffix = [&](const std::string& prefix) -> std::optional<std::uint32_t> {
        if (f.rfind(prefix, 0) != 0) return std::nullopt;
        const std::string rest = f.substr(prefix.size());
        if (rest.empty()) return std::nullopt;
        return static_cast<std::uint32_t>(std::stoul(rest));
    };
    if (f == "lattice") {
        fam.graph = lattice_box(opt.dim, opt.side, opt.budget_vertices);
        // center of the box
        VertexId center = 0;
        std::uint64_t stride = 1;
        for (std::uint32_t d = 0; d < opt.dim; ++d) {
            center += static_cast<VertexId>((opt.side / 2) * stride);
            stride *= opt.side;
        }
        fam.base_vertex = center;
    } else if (f == "gasket") {
        fam.graph = sierpinski_gasket(opt.level, opt.budget_vertices);
    } else if (f == "vicsek") {
        fam.graph = vicsek_tree(opt.level, opt.budget_vertices);
    } else if (f == "alt") {
        AlternatingTreeSpec spec;
        spec.n1 = opt.n1;
        spec.n2 = opt.n2;
        spec.radii = opt.radii.empty() ? std::vector<std::uint32_t>{opt.k1} : opt.radii;
        fam.layered = alternating_tree(spec);
    } else if (f == "yn") {
        RWRANGE_REQUIRE(!opt.core_path.empty(), ConfigInvalid,
                        "family yn needs --core edge-list file");
        fam.attached = attach_trees(read_edge_list_file(opt.core_path), opt.base, opt.big_n);
    } else if (auto nt = parse_suffix("ttilde")) {
        fam.layered = LayeredTree::pruned(*nt);
    } else if (auto nr = parse_suffix("t")) {
        fam.layered = LayeredTree::regular(*nr);
    } else {
        throw_error(ErrorCode::ConfigInvalid, "unknown family: " + f);
    }
    return fam;
}

WeightedGraph named_graph(const std::string& name) {
    if (name == "triangle") {
        return WeightedGraph::build_explicit({{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}});
    }
    if (name == "edge") {
        return WeightedGraph::build_explicit({{0, 1, 1.0}});
    }
    if (name == "path3") {
        return WeightedGraph::build_explicit({{0, 1, 1.0}, {1, 2, 1.0}});
    }
    return read_edge_list_file(name);
}

Interval resolve_f_interval(const Options& opt, const Family& fam) {
    if (opt.f_lo >= 0.0 && opt.f_hi >= 0.0) return {opt.f_lo, opt.f_hi};
    RWRANGE_REQUIRE(fam.layered.has_value(), ConfigInvalid,
                    "--f-lo/--f-hi required for non-layered families");
    // certified bounds over the first bands of the layered tree
    std::vector<std::uint32_t> layers;
    for (std::uint32_t l = 0; l <= 12; l += 3) layers.push_back(l);
    auto fb = f_bounds(*fam.layered, layers, 200);
    return fb.one_minus_f;
}

McOptions mc_options(const Options& opt, bool keep_samples = true) {
    McOptions mc;
    mc.trials = opt.trials;
    mc.seed = opt.seed;
    mc.jobs = opt.jobs;
    mc.step_budget = opt.budget_steps;
    mc.keep_samples = keep_samples;
    return mc;
}

json resolved_config(const Options& opt, const std::string& command) {
    json j;
    j["command"] = command;
    j["family"] = opt.family;
    j["graph"] = opt.graph_name;
    j["core"] = opt.core_path;
    j["dim"] = opt.dim;
    j["side"] = opt.side;
    j["level"] = opt.level;
    j["depth"] = opt.depth;
    j["base"] = opt.base;
    j["big_n"] = opt.big_n;
    j["n1"] = opt.n1;
    j["n2"] = opt.n2;
    j["k1"] = opt.k1;
    j["stages"] = opt.stages;
    j["radii"] = opt.radii;
    j["n"] = opt.n;
    j["n_max"] = opt.n_max;
    j["trials"] = opt.trials;
    j["seed"] = opt.seed;
    j["epsilon"] = opt.epsilon;
    j["slack"] = opt.slack;
    j["f_lo"] = opt.f_lo;
    j["f_hi"] = opt.f_hi;
    j["mode"] = opt.mode;
    j["jobs"] = opt.jobs;
    j["budget_vertices"] = opt.budget_vertices;
    j["budget_steps"] = opt.budget_steps;
    return j;
}

int run_build(const Options& opt) {
    Family fam = make_family(opt);
    WeightedGraph g = [&] {
        if (fam.graph) return std::move(*fam.graph);
        if (fam.layered) return truncate_tree(*fam.layered, opt.depth, opt.budget_vertices).graph;
        return truncate_tree(*fam.attached, opt.depth, opt.budget_vertices).graph;
    }();
    write_file(fs::path(opt.out_dir) / "graph.edges", write_edge_list(g));
    json j;
    j["family"] = opt.family;
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
    j["max_degree"] = g.max_degree();
    j["artificial_boundary"] = g.artificial_boundary().size();
    write_file(fs::path(opt.out_dir) / "build.json", j.dump(2) + "\n");
    return 0;
}

int run_resist(const Options& opt) {
    Family fam = make_family(opt);
    ResistanceProfile profile;
    if (fam.layered) {
        profile = certified_profile(*fam.layered, opt.base, opt.n_max);
    } else {
        RWRANGE_REQUIRE(fam.graph.has_value(), ConfigInvalid,
                        "resist supports explicit and layered families");
        const VertexId base = opt.base ? opt.base : fam.base_vertex;
        profile = rho_profile(*fam.graph, base, opt.n_max);
    }
    write_file(fs::path(opt.out_dir) / "resist.json", report_json(profile) + "\n");
    write_file(fs::path(opt.out_dir) / "resist.csv", report_csv(profile));
    return 0;
}

int run_walk(const Options& opt) {
    Family fam = make_family(opt);
    RangeReport report = [&] {
        if (fam.layered) return expected_range_mc(*fam.layered, {}, opt.n, mc_options(opt));
        if (fam.attached) return expected_range_mc(*fam.attached, {}, opt.n, mc_options(opt));
        const VertexId base = opt.base ? opt.base : fam.base_vertex;
        return expected_range_mc(*fam.graph, base, opt.n, mc_options(opt));
    }();
    write_file(fs::path(opt.out_dir) / "walk.json", report_json(report) + "\n");
    write_file(fs::path(opt.out_dir) / "walk.csv", report_csv(report));
    return 0;
}

int run_laws(const Options& opt) {
    Family fam = make_family(opt);
    if (opt.mode == "weak") {
        const Interval f = resolve_f_interval(opt, fam);
        RangeReport report = [&] {
            if (fam.layered) {
                return weak_law_experiment(*fam.layered, {}, opt.n, opt.epsilon, f,
                                           mc_options(opt));
            }
            RWRANGE_REQUIRE(fam.graph.has_value(), ConfigInvalid,
                            "weak-law mode supports explicit and layered families");
            const VertexId base = opt.base ? opt.base : fam.base_vertex;
            return weak_law_experiment(*fam.graph, base, opt.n, opt.epsilon, f, mc_options(opt));
        }();
        write_file(fs::path(opt.out_dir) / "laws.json", report_json(report) + "\n");
        write_file(fs::path(opt.out_dir) / "laws.csv", report_csv(report));
        return 0;
    }
    if (opt.mode == "bridge") {
        RWRANGE_REQUIRE(fam.graph.has_value(), ConfigInvalid,
                        "bridge mode needs an explicit graph family");
        const VertexId base = opt.base ? opt.base : fam.base_vertex;
        const double f_hi = opt.f_hi >= 0.0 ? opt.f_hi : 0.5;
        auto report = bridge_experiment(*fam.graph, base, opt.n, opt.epsilon, f_hi,
                                        mc_options(opt));
        write_file(fs::path(opt.out_dir) / "laws.json", report_json(report) + "\n");
        write_file(fs::path(opt.out_dir) / "laws.csv", report_csv(report));
        return 0;
    }
    if (opt.mode == "tail") {
        // geometric grid up to n_max
        std::vector<std::uint32_t> grid;
        for (std::uint32_t m = 4; m <= opt.n_max; m = m + std::max(1u, m / 2)) grid.push_back(m);
        TailExponentFit fit = [&] {
            if (fam.layered) return tail_exponent_fit(*fam.layered, grid);
            RWRANGE_REQUIRE(fam.graph.has_value(), ConfigInvalid,
                            "tail mode supports explicit and layered families");
            const VertexId base = opt.base ? opt.base : fam.base_vertex;
            std::vector<VertexId> sample{base};
            return tail_exponent_fit(*fam.graph, sample, grid);
        }();
        write_file(fs::path(opt.out_dir) / "laws.json", report_json(fit) + "\n");
        return 0;
    }
    throw_error(ErrorCode::ConfigInvalid, "laws --mode must be weak, bridge or tail");
}

int run_fluct(const Options& opt) {
    FluctuationParams params;
    params.n1 = opt.n1;
    params.n2 = opt.n2;
    params.k1 = opt.k1;
    params.stages = opt.stages;
    params.slack = opt.slack;
    params.trials = opt.trials;
    params.seed = opt.seed;
    params.jobs = opt.jobs;
    params.step_budget = opt.budget_steps;
    auto report = fluctuation_search(params);
    write_file(fs::path(opt.out_dir) / "fluct.json", report_json(report) + "\n");
    write_file(fs::path(opt.out_dir) / "fluct.csv", report_csv(report));
    return 0;
}

int run_ucheck(const Options& opt) {
    Family fam = make_family(opt);
    if (opt.mode == "sweep") {
        UniformityReport report = [&] {
            if (fam.layered) {
                std::vector<std::uint32_t> layers;
                for (std::uint32_t l = 0; l <= opt.depth; ++l) layers.push_back(l);
                return uniformity_sweep(*fam.layered, layers, opt.n_max);
            }
            RWRANGE_REQUIRE(fam.graph.has_value(), ConfigInvalid,
                            "sweep supports explicit and layered families");
            const VertexId base = opt.base ? opt.base : fam.base_vertex;
            std::vector<VertexId> sample{base};
            for (VertexId v : fam.graph->neighbors(base)) sample.push_back(v);
            std::vector<std::uint32_t> grid;
            for (std::uint32_t n = 1; n <= opt.n_max; n *= 2) grid.push_back(n);
            return uniformity_sweep(*fam.graph, sample, grid);
        }();
        write_file(fs::path(opt.out_dir) / "ucheck.json", report_json(report) + "\n");
        write_file(fs::path(opt.out_dir) / "ucheck.csv", report_csv(report));
        return 0;
    }
    if (opt.mode == "recurrence") {
        RWRANGE_REQUIRE(fam.graph.has_value(), ConfigInvalid,
                        "recurrence mode needs an explicit family");
        const VertexId base = opt.base ? opt.base : fam.base_vertex;
        std::vector<VertexId> sample{base};
        for (VertexId v : fam.graph->neighbors(base)) sample.push_back(v);
        std::vector<std::uint32_t> depths;
        for (std::uint32_t d = 1; d <= opt.n_max; d *= 2) depths.push_back(d);
        auto report = recurrence_diagnostic(*fam.graph, sample, opt.n_max, depths);
        write_file(fs::path(opt.out_dir) / "ucheck.json", report_json(report) + "\n");
        write_file(fs::path(opt.out_dir) / "ucheck.csv", report_csv(report));
        return 0;
    }
    if (opt.mode == "alpha") {
        RWRANGE_REQUIRE(fam.graph.has_value(), ConfigInvalid,
                        "alpha mode needs an explicit family");
        const VertexId base = opt.base ? opt.base : fam.base_vertex;
        std::vector<VertexId> sample{base};
        const std::uint32_t k_max = opt.n_max % 2 == 0 ? opt.n_max : opt.n_max - 1;
        auto fit = uc_alpha_fit(*fam.graph, sample, std::max(4u, k_max / 5 / 2 * 2), k_max, 2);
        write_file(fs::path(opt.out_dir) / "ucheck.json", report_json(fit) + "\n");
        return 0;
    }
    throw_error(ErrorCode::ConfigInvalid, "ucheck --mode must be sweep, recurrence or alpha");
}

int run_oracle(const Options& opt) {
    RWRANGE_REQUIRE(!opt.graph_name.empty(), ConfigInvalid,
                    "oracle needs --graph (triangle|edge|path3|FILE)");
    auto g = named_graph(opt.graph_name);
    auto law = enumerate_range_law(g, opt.base, static_cast<std::uint32_t>(opt.n));
    write_file(fs::path(opt.out_dir) / "oracle.json", report_json(law) + "\n");
    return 0;
}

void merge_config_file(CLI::App& app, Options& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    RWRANGE_REQUIRE(in.good(), ConfigInvalid, "cannot open config " + opt.config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw_error(ErrorCode::ConfigInvalid, std::string("config parse: ") + e.what());
    }
    auto flag_given = [&](const std::string& flag) {
        for (auto* sub : app.get_subcommands()) {
            if (auto* o = sub->get_option_no_throw(flag); o && o->count() > 0) return true;
        }
        if (auto* o = app.get_option_no_throw(flag); o && o->count() > 0) return true;
        return false;
    };
    auto assign = [&](const char* key, auto& field) {
        using T = std::decay_t<decltype(field)>;
        if (!cfg.contains(key)) return;
        if (flag_given("--" + std::string(key))) return; // flags win
        try {
            field = cfg.at(key).get<T>();
        } catch (const json::exception& e) {
            throw_error(ErrorCode::ConfigInvalid,
                        std::string("config key '") + key + "': " + e.what());
        }
    };
    assign("family", opt.family);
    assign("graph", opt.graph_name);
    assign("core", opt.core_path);
    assign("dim", opt.dim);
    assign("side", opt.side);
    assign("level", opt.level);
    assign("depth", opt.depth);
    assign("base", opt.base);
    assign("big-n", opt.big_n);
    assign("n1", opt.n1);
    assign("n2", opt.n2);
    assign("k1", opt.k1);
    assign("stages", opt.stages);
    assign("radii", opt.radii);
    assign("n", opt.n);
    assign("n-max", opt.n_max);
    assign("trials", opt.trials);
    assign("seed", opt.seed);
    assign("epsilon", opt.epsilon);
    assign("slack", opt.slack);
    assign("f-lo", opt.f_lo);
    assign("f-hi", opt.f_hi);
    assign("mode", opt.mode);
    assign("jobs", opt.jobs);
    assign("budget-vertices", opt.budget_vertices);
    assign("budget-steps", opt.budget_steps);
    assign("out", opt.out_dir);
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"random-walk range and resistance experiments"};
    app.require_subcommand(1);

    app.add_option("--config", opt.config_path, "JSON config file; flags override its values");
    app.add_option("--out", opt.out_dir, "output directory (reports + CSV + run.log)");

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", opt.family,
                        "lattice | t<N> | ttilde<N> | yn | alt | gasket | vicsek");
        sub->add_option("--dim", opt.dim, "lattice dimension (1-3)");
        sub->add_option("--side", opt.side, "lattice side length");
        sub->add_option("--level", opt.level, "gasket/vicsek level");
        sub->add_option("--depth", opt.depth, "truncation radius for implicit trees");
        sub->add_option("--base", opt.base, "base vertex id (explicit) or layer (layered)");
        sub->add_option("--big-n", opt.big_n, "attachment degree N for family yn");
        sub->add_option("--core", opt.core_path, "core tree edge list for family yn");
        sub->add_option("--n1", opt.n1, "inner band degree");
        sub->add_option("--n2", opt.n2, "outer band degree");
        sub->add_option("--k1", opt.k1, "first alternation radius");
        sub->add_option("--radii", opt.radii, "explicit alternation radii list");
        sub->add_option("--n", opt.n, "walk horizon");
        sub->add_option("--n-max", opt.n_max, "profile / grid depth");
        sub->add_option("--trials", opt.trials, "Monte Carlo trials");
        sub->add_option("--seed", opt.seed, "master seed");
        sub->add_option("--epsilon", opt.epsilon, "weak-law epsilon");
        sub->add_option("--slack", opt.slack, "fluctuation slack");
        sub->add_option("--stages", opt.stages, "fluctuation stages");
        sub->add_option("--f-lo", opt.f_lo, "supplied 1-F2");
        sub->add_option("--f-hi", opt.f_hi, "supplied 1-F1");
        sub->add_option("--mode", opt.mode,
                        "laws: weak|bridge|tail; ucheck: sweep|recurrence|alpha");
        sub->add_option("--jobs", opt.jobs, "worker threads (results are schedule-independent)");
        sub->add_option("--budget-vertices", opt.budget_vertices, "vertex budget");
        sub->add_option("--budget-steps", opt.budget_steps, "total walk step budget");
        sub->add_option("--graph", opt.graph_name, "oracle graph: triangle|edge|path3|FILE");
    };

    CLI::App* cmd_build = app.add_subcommand("build", "emit a graph family as an edge list");
    CLI::App* cmd_resist = app.add_subcommand("resist", "resistance profile with enclosures");
    CLI::App* cmd_walk = app.add_subcommand("walk", "Monte Carlo range report");
    CLI::App* cmd_laws = app.add_subcommand("laws", "weak-law / bridge / tail experiments");
    CLI::App* cmd_fluct = app.add_subcommand("fluct", "alternating-radii fluctuation search");
    CLI::App* cmd_ucheck = app.add_subcommand("ucheck", "uniformity / recurrence / decay checks");
    CLI::App* cmd_oracle = app.add_subcommand("oracle", "exact tiny-graph range law");
    for (CLI::App* sub :
         {cmd_build, cmd_resist, cmd_walk, cmd_laws, cmd_fluct, cmd_ucheck, cmd_oracle}) {
        add_common(sub);
        sub->fallthrough(); // global --out/--config may follow the subcommand
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    std::ofstream log_stream;
    try {
        merge_config_file(app, opt);

        if (const char* mb = std::getenv("RWRANGE_BUDGET_MB")) {
            // ~40 bytes per materialized vertex or trie node
            const std::uint64_t cap = std::strtoull(mb, nullptr, 10) * 25'000ULL;
            if (cap > 0) opt.budget_vertices = std::min(opt.budget_vertices, cap);
        }

        fs::create_directories(opt.out_dir);
        log_stream.open(fs::path(opt.out_dir) / "run.log", std::ios::app);
        g_log = &log_stream;

        const std::string command = app.get_subcommands().front()->get_name();
        log_line("command: " + command);
        write_file(fs::path(opt.out_dir) / "resolved_config.json",
                   resolved_config(opt, command).dump(2) + "\n");

        if (command == "build") return run_build(opt);
        if (command == "resist") return run_resist(opt);
        if (command == "walk") return run_walk(opt);
        if (command == "laws") return run_laws(opt);
        if (command == "fluct") return run_fluct(opt);
        if (command == "ucheck") return run_ucheck(opt);
        if (command == "oracle") return run_oracle(opt);
        throw_error(ErrorCode::ConfigInvalid, "unknown command " + command);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        log_line(std::string("error: ") + e.what());
        switch (e.code()) {
            case ErrorCode::BudgetExceeded:
            case ErrorCode::SizeOverflow:
                return 3;
            default:
                return 2;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

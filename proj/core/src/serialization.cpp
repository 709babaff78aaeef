#include "rwrange/serialization.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace rwrange {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

json interval_json(const Interval& iv) { return json{{"lo", iv.lo}, {"hi", iv.hi}}; }

json mean_ci_json(const MeanCi& ci) {
    return json{{"mean", ci.mean}, {"stddev", ci.stddev}, {"halfwidth", ci.halfwidth}};
}

} // namespace

std::string report_json(const ResistanceProfile& profile) {
    json j;
    j["base"] = profile.base;
    j["certified"] = profile.certified;
    j["rho"] = profile.rho;
    if (profile.certified) {
        j["lo"] = profile.lo;
        j["hi"] = profile.hi;
    }
    return j.dump(2);
}

std::string report_csv(const ResistanceProfile& profile) {
    std::ostringstream out;
    out << "n,rho,lo,hi\n";
    for (std::size_t i = 0; i < profile.rho.size(); ++i) {
        out << (i + 1) << ',' << format_double(profile.rho[i]) << ',';
        if (profile.certified) {
            out << format_double(profile.lo[i]) << ',' << format_double(profile.hi[i]);
        } else {
            out << format_double(profile.rho[i]) << ','; // monotone lower bound only
        }
        out << '\n';
    }
    return out.str();
}

namespace {

json tail_json(const TailStat& t) {
    return json{{"threshold_ratio", t.threshold_ratio}, {"upper", t.upper},
                {"count", t.count},  {"frequency", t.frequency},
                {"wilson", interval_json(t.wilson)}};
}

} // namespace

std::string report_json(const RangeReport& report) {
    json j;
    j["family"] = report.family;
    j["n"] = report.n;
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["mean_ratio"] = report.mean_ratio;
    j["mean_ci"] = mean_ci_json(report.mean_ci);
    j["mean_wilson"] = interval_json(report.mean_wilson);
    json tails = json::array();
    for (const TailStat& t : report.tails) tails.push_back(tail_json(t));
    j["tails"] = tails;
    if (report.attempted > 0) {
        j["accepted"] = report.accepted;
        j["attempted"] = report.attempted;
    }
    return j.dump(2);
}

std::string report_csv(const RangeReport& report) {
    std::ostringstream out;
    out << "trial,n,range,final_distance\n";
    for (std::size_t i = 0; i < report.samples.size(); ++i) {
        const RangeSample& s = report.samples[i];
        out << i << ',' << report.n << ',' << s.range << ',' << s.final_distance << '\n';
    }
    return out.str();
}

std::string report_json(const FluctuationReport& report) {
    json j;
    j["n1"] = report.params.n1;
    j["n2"] = report.params.n2;
    j["k1"] = report.params.k1;
    j["stages_requested"] = report.params.stages;
    j["slack"] = report.params.slack;
    j["trials"] = report.params.trials;
    j["seed"] = report.params.seed;
    j["radius_budget"] = report.params.radius_budget;
    j["g_n1"] = report.g_n1;
    j["g_n2"] = report.g_n2;
    json stages = json::array();
    for (const FluctuationStage& s : report.stages) {
        json attempts = json::array();
        for (const FluctuationAttempt& a : s.attempts) {
            attempts.push_back(json{{"radius", a.radius},
                                    {"estimate", a.estimate},
                                    {"ci_halfwidth", a.ci_halfwidth},
                                    {"cleared", a.cleared}});
        }
        stages.push_back(json{{"stage", s.stage},
                              {"radius_index", s.radius_index},
                              {"lower_stage", s.lower_stage},
                              {"slack", s.slack},
                              {"target", s.target},
                              {"radius", s.radius},
                              {"estimate", s.estimate},
                              {"ci", mean_ci_json(s.ci)},
                              {"attempts", attempts}});
    }
    j["stages"] = stages;
    j["final_radii"] = report.final_spec.radii;
    return j.dump(2);
}

std::string report_csv(const FluctuationReport& report) {
    std::ostringstream out;
    out << "stage,k,estimate,ci_lo,ci_hi,target\n";
    for (const FluctuationStage& s : report.stages) {
        out << s.stage << ',' << s.radius << ',' << format_double(s.estimate) << ','
            << format_double(s.ci.mean - s.ci.halfwidth) << ','
            << format_double(s.ci.mean + s.ci.halfwidth) << ',' << format_double(s.target)
            << '\n';
    }
    return out.str();
}

std::string report_json(const UniformityReport& report) {
    json j;
    j["family"] = report.family;
    j["certified"] = report.certified;
    j["sample"] = report.sample;
    j["verdict"] = report.verdict;
    json rows = json::array();
    for (const UniformityRow& r : report.rows) {
        json row;
        row["n"] = r.n;
        row["gap_or_proxy"] = r.gap_or_proxy;
        if (!std::isnan(r.analytic_bound)) row["analytic_bound"] = r.analytic_bound;
        if (!std::isnan(r.enclosure_width)) row["enclosure_width"] = r.enclosure_width;
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(2);
}

std::string report_csv(const UniformityReport& report) {
    std::ostringstream out;
    out << "n,gap_or_proxy,analytic_bound\n";
    for (const UniformityRow& r : report.rows) {
        out << r.n << ',' << format_double(r.gap_or_proxy) << ','
            << format_double(r.analytic_bound) << '\n';
    }
    return out.str();
}

std::string report_json(const RecurrenceReport& report) {
    json j;
    j["sample"] = report.sample;
    j["infimum"] = report.infimum;
    json checks = json::array();
    for (const auto& c : report.rho_checks) {
        checks.push_back(json{{"x", c.x},
                              {"n", c.n},
                              {"rho", c.rho},
                              {"partial_sum", c.partial_sum},
                              {"holds", c.holds}});
    }
    j["rho_checks"] = checks;
    return j.dump(2);
}

std::string report_csv(const RecurrenceReport& report) {
    std::ostringstream out;
    out << "n,inf_partial_sum\n";
    for (std::size_t k = 0; k < report.infimum.size(); ++k) {
        out << k << ',' << format_double(report.infimum[k]) << '\n';
    }
    return out.str();
}

namespace {

json power_fit_json(const PowerLawFit& f) {
    return json{{"slope", f.slope},
                {"intercept", f.intercept},
                {"slope_stderr", f.slope_stderr},
                {"residual_rms", f.residual_rms},
                {"points", f.points}};
}

json points_json(const std::vector<std::pair<double, double>>& pts) {
    json arr = json::array();
    for (const auto& [x, y] : pts) arr.push_back(json::array({x, y}));
    return arr;
}

} // namespace

std::string report_json(const UcAlphaFit& fit) {
    json j;
    j["alpha_hat"] = fit.alpha_hat;
    j["c_hat"] = fit.c_hat;
    j["fit"] = power_fit_json(fit.fit);
    j["points"] = points_json(fit.points);
    return j.dump(2);
}

std::string report_json(const TailExponentFit& fit) {
    json j;
    j["delta"] = fit.delta;
    j["delta_stderr"] = fit.delta_stderr;
    j["delta_positive_95"] = fit.delta_positive_95;
    j["fit"] = power_fit_json(fit.fit);
    j["points"] = points_json(fit.points);
    return j.dump(2);
}

std::string report_json(const FBoundsReport& report) {
    json j;
    j["layers"] = report.layers;
    json escapes = json::array();
    for (const Interval& iv : report.escapes) escapes.push_back(interval_json(iv));
    j["escapes"] = escapes;
    j["one_minus_f"] = interval_json(report.one_minus_f);
    return j.dump(2);
}

std::string report_json(const LastExitTable& table) {
    json j;
    j["base"] = table.base;
    j["n"] = table.n;
    j["expected_range"] = table.expected_range;
    j["per_step"] = table.per_step;
    return j.dump(2);
}

std::string report_json(const ExactRangeLaw& law) {
    json j;
    j["horizon"] = law.horizon;
    j["exact"] = law.exact;
    j["scale"] = law.scale;
    if (law.exact) j["denominator"] = uint128_to_string(law.denominator);
    json entries = json::array();
    for (std::uint32_t r = 1; r <= law.horizon; ++r) {
        for (VertexId y = 0; y < law.vertex_count; ++y) {
            const double p = law.prob(r, y);
            if (p == 0.0) continue;
            json e;
            e["range"] = r;
            e["endpoint"] = y;
            e["prob"] = p;
            if (law.exact) {
                e["numerator"] = uint128_to_string(
                    law.numerators[static_cast<std::size_t>(r - 1) * law.vertex_count + y]);
            }
            entries.push_back(e);
        }
    }
    j["entries"] = entries;
    j["expected_range"] = law.expected_range();
    return j.dump(2);
}

} // namespace rwrange

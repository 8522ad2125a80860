// Batch front end: load a graphing spec file, run one operation, emit
// deterministic CSV or JSON with a provenance header.
//
// Exit codes: 0 ok, 2 validation error, 3 resource cap or scan budget,
// 4 unresolved metric result when --require-resolved was set.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "glab/compact_metric.hpp"
#include "glab/completion.hpp"
#include "glab/families.hpp"
#include "glab/spec_file.hpp"
#include "glab/verify_stats.hpp"

namespace {

constexpr const char* kVersion = "graphing-lab 1.0.0";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
}

std::string fmt(long v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }
std::string fmt(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%" PRIu64, v);
    return std::string(buf);
}

struct Output {
    std::vector<std::pair<std::string, std::string>> header; // provenance
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void meta(const std::string& k, const std::string& v) { header.push_back({k, v}); }

    std::string render_csv() const {
        std::ostringstream out;
        for (const auto& [k, v] : header) out << "# " << k << ": " << v << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
        out << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << "\n";
        }
        return out.str();
    }

    std::string render_json() const {
        nlohmann::ordered_json doc;
        for (const auto& [k, v] : header) doc["provenance"][k] = v;
        doc["columns"] = columns;
        doc["rows"] = rows;
        return doc.dump(2) + "\n";
    }
};

// "lo:hi" -> interval piece; "atoms:1,2" -> atom subset; "p@lo:hi" -> piece
// in union part p
glab::IntervalSet parse_set(const std::string& text) {
    std::string body = text;
    int part = 0;
    if (auto at = body.find('@'); at != std::string::npos) {
        part = std::stoi(body.substr(0, at));
        body = body.substr(at + 1);
    }
    if (body.rfind("atoms:", 0) == 0) {
        std::vector<int> atoms;
        std::stringstream ss(body.substr(6));
        for (std::string tok; std::getline(ss, tok, ',');) atoms.push_back(std::stoi(tok));
        return glab::IntervalSet::of_atoms(atoms, part);
    }
    auto colon = body.find(':');
    if (colon == std::string::npos)
        throw glab::DomainError("set must be lo:hi or atoms:i,j,... (got \"" + text + "\")");
    return glab::IntervalSet::segment(std::stod(body.substr(0, colon)), std::stod(body.substr(colon + 1)),
                                      part);
}

void write_output(const Output& out, const std::string& path, const std::string& format) {
    std::string text = format == "json" ? out.render_json() : out.render_csv();
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw glab::ValidationError("cannot write " + path);
        f << text;
    }
}

void stamp(Output& out, const glab::LoadedSpec& spec, const std::string& command) {
    out.meta("tool", kVersion);
    out.meta("command", command);
    out.meta("spec", spec.path);
    out.meta("spec_hash", "fnv1a:" + spec.hash);
    out.meta("family", spec.family);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphing lab: compactification-metric and verification toolkit"};
    app.require_subcommand(1);

    std::string spec_path, out_path, format = "csv";
    app.fallthrough();
    app.add_option("--spec", spec_path, "graphing spec file (JSON)")->required();
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // shared parameter storage
    double x = 0.0, y = 0.0, eps = 0.0, rho = 0.0;
    int part_x = 0, part_y = 0, r = 0, rmax = glab::kDefaultRMax, t = 1, depth = 5, R = 1;
    int rexplore = 100;
    long n = 0;
    std::uint64_t seed = 0;
    bool require_resolved = false, strict = false;
    std::string set_a, set_b, spec2_path, seq_mode = "orbit";
    double orbit_start = 0.0, target = -1.0;
    bool orbit_inverse = false, have_target = false;

    auto* c_metric = app.add_subcommand("metric", "compact distance between two points");
    c_metric->add_option("--x", x)->required();
    c_metric->add_option("--y", y)->required();
    c_metric->add_option("--part-x", part_x);
    c_metric->add_option("--part-y", part_y);
    c_metric->add_option("--rmax", rmax);
    c_metric->add_flag("--require-resolved", require_resolved,
                       "exit 4 when only a bracket is available");

    auto* c_ball = app.add_subcommand("ball", "dump a rooted ball");
    c_ball->add_option("--x", x)->required();
    c_ball->add_option("--part-x", part_x);
    c_ball->add_option("--r", r)->required();

    auto* c_unimod = app.add_subcommand("check-unimodular", "measure-preservation gap");
    c_unimod->add_option("--a", set_a)->required();
    c_unimod->add_option("--b", set_b)->required();
    c_unimod->add_option("--n", n)->required();
    c_unimod->add_option("--seed", seed)->required();

    auto* c_c3 = app.add_subcommand("check-c3", "near pairs admit low-displacement isomorphisms");
    c_c3->add_option("--eps", eps)->required();
    c_c3->add_option("--r", r)->required();
    c_c3->add_option("--n", n)->required();
    c_c3->add_option("--seed", seed)->required();
    c_c3->add_option("--rmax", rmax);
    c_c3->add_flag("--strict", strict, "measure displacement in the compact metric");

    auto* c_power = app.add_subcommand("check-power-ball", "ball-count exchange identity");
    c_power->add_option("--u", set_a)->required();
    c_power->add_option("--w", set_b)->required();
    c_power->add_option("--r", r)->required();
    c_power->add_option("--n", n)->required();
    c_power->add_option("--seed", seed)->required();

    auto* c_bs = app.add_subcommand("bs-stats", "sampled rooted-ball class histogram");
    c_bs->add_option("--r", r)->required();
    c_bs->add_option("--n", n)->required();
    c_bs->add_option("--seed", seed)->required();

    auto* c_cmp = app.add_subcommand("compare-local", "TV distance of two ball histograms");
    c_cmp->add_option("--spec2", spec2_path)->required();
    c_cmp->add_option("--r", r)->required();
    c_cmp->add_option("--n", n)->required();
    c_cmp->add_option("--seed", seed)->required();

    auto* c_sep = app.add_subcommand("separation", "min compact distance per graph distance");
    c_sep->add_option("--t", t)->required();
    c_sep->add_option("--n", n)->required();
    c_sep->add_option("--seed", seed)->required();
    c_sep->add_option("--rmax", rmax);

    auto* c_rec = app.add_subcommand("recurrence", "|ball \xE2\x88\xA9 A| per radius");
    c_rec->add_option("--a", set_a)->required();
    c_rec->add_option("--x", x)->required();
    c_rec->add_option("--part-x", part_x);
    c_rec->add_option("--radius", R)->required();

    auto* c_sd = app.add_subcommand("self-dense", "search the component for a metric-close point");
    c_sd->add_option("--x", x)->required();
    c_sd->add_option("--part-x", part_x);
    c_sd->add_option("--eps", eps)->required();
    c_sd->add_option("--rexplore", rexplore);
    c_sd->add_option("--rmax", rmax);

    auto* c_trace = app.add_subcommand("compactify-trace", "build a limit tower and dump it");
    c_trace->add_option("--depth", depth)->required();
    c_trace->add_option("--sequence", seq_mode, "orbit or random")
        ->check(CLI::IsMember({"orbit", "random"}));
    c_trace->add_option("--orbit-start", orbit_start);
    c_trace->add_flag("--orbit-inverse", orbit_inverse, "walk the first generator backwards");
    c_trace->add_option("--seed", seed, "required for --sequence random");
    auto* target_opt = c_trace->add_option("--target", target, "pin the root coordinate limit");

    auto* c_support = app.add_subcommand("support", "classify a point against the measure support");
    c_support->add_option("--x", x)->required();
    c_support->add_option("--part-x", part_x);
    c_support->add_option("--rho", rho)->required();
    c_support->add_option("--n", n)->required();
    c_support->add_option("--seed", seed)->required();
    c_support->add_option("--rmax", rmax);

    auto* c_validate = app.add_subcommand("validate", "structural checks on the loaded graphing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    have_target = target_opt->count() > 0;

    try {
        glab::LoadedSpec spec = glab::load_spec_file(spec_path);
        const glab::Graphing& g = spec.graphing;
        Output out;

        if (c_metric->parsed()) {
            stamp(out, spec, "metric");
            out.meta("rmax", fmt(rmax));
            glab::MetricResult res = glab::compact_distance(g, {part_x, x}, {part_y, y}, rmax);
            if (require_resolved && !res.resolved) {
                std::cerr << "metric: unresolved bracket [" << fmt(res.value_lower) << ", "
                          << fmt(res.value_upper) << "] at rmax " << rmax << "\n";
                return 4;
            }
            out.columns = {"x", "y", "value_lower", "value_upper", "resolved", "witness_radius"};
            out.rows.push_back({fmt(x), fmt(y), fmt(res.value_lower), fmt(res.value_upper),
                                fmt(res.resolved), fmt(res.witness_radius)});
        } else if (c_ball->parsed()) {
            stamp(out, spec, "ball");
            out.meta("r", fmt(r));
            glab::RootedBall b = g.ball({part_x, x}, r);
            out.columns = {"index", "part", "coord", "dist_from_root", "adjacency"};
            for (int i = 0; i < b.size(); ++i) {
                std::string adj;
                for (int j : b.adj[i]) adj += (adj.empty() ? "" : " ") + std::to_string(j);
                out.rows.push_back({fmt(i), fmt(b.nodes[i].part), fmt(b.nodes[i].coord),
                                    fmt(b.dist_from_root[i]), adj});
            }
        } else if (c_unimod->parsed()) {
            stamp(out, spec, "check-unimodular");
            out.meta("seed", fmt(seed));
            out.meta("a", set_a);
            out.meta("b", set_b);
            auto rep = glab::unimodularity_gap(g, parse_set(set_a), parse_set(set_b), n, seed);
            out.columns = {"lhs", "rhs", "gap", "stderr", "n", "pass"};
            out.rows.push_back(
                {fmt(rep.lhs), fmt(rep.rhs), fmt(rep.gap), fmt(rep.stderr_), fmt(rep.n), fmt(rep.pass)});
        } else if (c_c3->parsed()) {
            stamp(out, spec, "check-c3");
            out.meta("seed", fmt(seed));
            out.meta("rmax", fmt(rmax));
            out.meta("strict", fmt(strict));
            auto rep = glab::c3_check(g, eps, r, static_cast<int>(n), seed, rmax, strict);
            out.columns = {"eps", "delta", "r", "requested", "generated", "passed", "starved", "pass"};
            bool pass = !rep.starved && rep.generated == rep.requested && rep.passed == rep.generated;
            out.rows.push_back({fmt(rep.eps), fmt(rep.delta), fmt(rep.r), fmt(rep.requested),
                                fmt(rep.generated), fmt(rep.passed), fmt(rep.starved), fmt(pass)});
        } else if (c_power->parsed()) {
            stamp(out, spec, "check-power-ball");
            out.meta("seed", fmt(seed));
            out.meta("u", set_a);
            out.meta("w", set_b);
            out.meta("r", fmt(r));
            auto rep = glab::power_ball_identity(g, parse_set(set_a), parse_set(set_b), r, n, seed);
            out.columns = {"lhs", "rhs", "gap", "stderr", "n", "pass"};
            out.rows.push_back(
                {fmt(rep.lhs), fmt(rep.rhs), fmt(rep.gap), fmt(rep.stderr_), fmt(rep.n), fmt(rep.pass)});
        } else if (c_bs->parsed()) {
            stamp(out, spec, "bs-stats");
            out.meta("seed", fmt(seed));
            out.meta("r", fmt(r));
            out.meta("n", fmt(n));
            glab::BallStats stats = glab::bs_histogram(g, r, n, seed);
            out.columns = {"class_key", "frequency"};
            for (const auto& [key, freq] : stats.histogram) out.rows.push_back({key, fmt(freq)});
        } else if (c_cmp->parsed()) {
            glab::LoadedSpec spec2 = glab::load_spec_file(spec2_path);
            stamp(out, spec, "compare-local");
            out.meta("spec2", spec2.path);
            out.meta("spec2_hash", "fnv1a:" + spec2.hash);
            out.meta("seed", fmt(seed));
            glab::BallStats s1 = glab::bs_histogram(g, r, n, seed);
            glab::BallStats s2 = glab::bs_histogram(spec2.graphing, r, n, seed);
            out.columns = {"r", "n", "tv"};
            out.rows.push_back({fmt(r), fmt(n), fmt(glab::local_equivalence_tv(s1, s2))});
        } else if (c_sep->parsed()) {
            stamp(out, spec, "separation");
            out.meta("seed", fmt(seed));
            out.meta("rmax", fmt(rmax));
            auto profile = glab::separation_profile(g, t, static_cast<int>(n), seed, rmax);
            out.columns = {"t", "min_d"};
            for (const auto& [tp, d] : profile) out.rows.push_back({fmt(tp), fmt(d)});
        } else if (c_rec->parsed()) {
            stamp(out, spec, "recurrence");
            out.meta("a", set_a);
            auto profile = glab::recurrence_profile(g, parse_set(set_a), {part_x, x}, R);
            out.columns = {"radius", "count"};
            for (const auto& [rr, count] : profile) out.rows.push_back({fmt(rr), fmt(count)});
        } else if (c_sd->parsed()) {
            stamp(out, spec, "self-dense");
            out.meta("eps", fmt(eps));
            out.meta("rexplore", fmt(rexplore));
            auto witness = glab::self_dense_probe(g, {part_x, x}, eps, rexplore, rmax);
            out.columns = {"found", "part", "coord"};
            if (witness)
                out.rows.push_back({"true", fmt(witness->part), fmt(witness->coord)});
            else
                out.rows.push_back({"false", "", ""});
        } else if (c_trace->parsed()) {
            stamp(out, spec, "compactify-trace");
            out.meta("depth", fmt(depth));
            out.meta("sequence", seq_mode);
            glab::TowerBuildOptions opts;
            if (have_target) opts.target_coord = target;
            glab::TowerBuildResult built = [&] {
                if (seq_mode == "random") {
                    if (c_trace->count("--seed") == 0)
                        throw glab::DomainError("compactify-trace --sequence random needs --seed");
                    out.meta("seed", fmt(seed));
                    long i = 0;
                    return glab::build_tower(
                        g,
                        [&]() -> std::optional<glab::Point> {
                            glab::Rng rng =
                                glab::Rng::substream(seed, 0x7a, static_cast<std::uint64_t>(i++));
                            return g.space().sample_point(rng);
                        },
                        depth, opts);
                }
                out.meta("orbit_start", fmt(orbit_start));
                out.meta("orbit_inverse", fmt(orbit_inverse));
                glab::Point p{0, orbit_start};
                const glab::Generator& gen = g.generators().at(0);
                return glab::build_tower(
                    g,
                    [&]() -> std::optional<glab::Point> {
                        glab::Point cur = p;
                        auto next = orbit_inverse ? gen.apply_inverse(g.space(), p)
                                                  : gen.apply(g.space(), p);
                        if (!next) return std::nullopt;
                        p = *next;
                        return cur;
                    },
                    depth, opts);
            }();
            if (!built.tower) {
                std::cerr << "compactify-trace: " << built.diagnostics << " (scanned "
                          << built.scanned << ", reached level " << built.reached_level << ")\n";
                return 3;
            }
            out.meta("residual", fmt(built.tower->residual));
            out.meta("scanned", fmt(static_cast<long>(built.scanned)));
            out.columns = {"level", "index", "part", "coord", "dist_from_root", "adjacency"};
            for (int lvl = 0; lvl <= built.tower->depth; ++lvl) {
                const glab::RootedBall& b = built.tower->levels[lvl];
                for (int i = 0; i < b.size(); ++i) {
                    std::string adj;
                    for (int j : b.adj[i]) adj += (adj.empty() ? "" : " ") + std::to_string(j);
                    out.rows.push_back({fmt(lvl), fmt(i), fmt(b.nodes[i].part), fmt(b.nodes[i].coord),
                                        fmt(b.dist_from_root[i]), adj});
                }
            }
        } else if (c_support->parsed()) {
            stamp(out, spec, "support");
            out.meta("seed", fmt(seed));
            out.meta("rho", fmt(rho));
            out.meta("rmax", fmt(rmax));
            auto cls = glab::support_classify(g, glab::Point{part_x, x}, rho, n, seed, rmax);
            out.columns = {"in_support", "measure_lower", "measure_upper", "n"};
            out.rows.push_back(
                {fmt(cls.in_support), fmt(cls.measure_lower), fmt(cls.measure_upper), fmt(cls.n)});
        } else if (c_validate->parsed()) {
            stamp(out, spec, "validate");
            glab::ValidationReport report = g.validate();
            out.columns = {"ok", "issue"};
            if (report.issues.empty()) out.rows.push_back({fmt(report.ok), ""});
            for (const std::string& issue : report.issues) out.rows.push_back({fmt(report.ok), issue});
        }

        write_output(out, out_path, format);
        return 0;
    } catch (const glab::ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const glab::ValidationError& e) {
        std::cerr << "validation: " << e.what() << "\n";
        return 2;
    } catch (const glab::DomainError& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    }
}

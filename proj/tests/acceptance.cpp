// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in the checks themselves.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "glab/ball_iso.hpp"
#include "glab/compact_metric.hpp"
#include "glab/completion.hpp"
#include "glab/families.hpp"
#include "glab/verify_stats.hpp"
#include "oracle_iso.hpp"

using namespace glab;

namespace {

const double A = kGoldenAlpha;
int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Graphing c_alpha() { return make_cycle_rotation(A); }
Graphing c_alpha_prime() { return delete_edge(c_alpha(), {0, 0.0}, {0, A}); }
Graphing k3() { return make_finite_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

Point u_k(int k) { return {0, frac(-k * A)}; }

// criterion 1: on the rotation, resolved compact distances equal the base
// distance to 1e-9 on 10^4 random pairs at r_max=32, within 60 s
void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    Graphing g = c_alpha();
    Rng rng(101);
    long resolved = 0, bad = 0;
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        Point x = g.space().sample_point(rng), y = g.space().sample_point(rng);
        MetricResult res = compact_distance(g, x, y, 32);
        if (!res.resolved) continue;
        ++resolved;
        double err = std::fabs(res.value() - g.space().base_distance(x, y));
        worst = std::max(worst, err);
        if (err > 1e-9) ++bad;
    }
    double dt = seconds_since(t0);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "metric equals base distance on the rotation: %ld resolved pairs, %ld over "
                  "tolerance, worst error %.3g, %.1f s",
                  resolved, bad, worst, dt);
    report(1, bad == 0 && resolved > 5000 && dt <= 60.0, buf);
}

// criterion 2: lifted-path law d(u_k, z) = max(1/(k+1), a) for k=1..20,
// a in {0.01, 0.05, 0.2}, to 1e-9; d(u, z) = 1 exactly; oracle: exhaustive
// isomorphism enumeration up to radius 24
void criterion2() {
    Graphing gp = c_alpha_prime();
    bool pass = true;
    double worst = 0.0;
    for (int k = 1; k <= 20 && pass; ++k) {
        for (double a : {0.01, 0.05, 0.2}) {
            Point x = u_k(k);
            Point z{0, frac(x.coord + a)};
            MetricResult res = compact_distance(gp, x, z, 64);
            double expect = std::max(1.0 / (k + 1), a);
            double err = res.resolved ? std::fabs(res.value() - expect) : 1.0;
            worst = std::max(worst, err);
            if (err > 1e-9) pass = false;

            // independent oracle: minimize max(1/(r+1), enumerated minimum
            // displacement) over r <= 24 with the brute-force enumerator
            if (k <= 6) {
                double oracle_d = 1.0; // r=0 root map: max(1, d0) = 1
                for (int r = 1; r <= 24; ++r) {
                    RootedBall b1 = gp.ball(x, r), b2 = gp.ball(z, r);
                    if (b1.size() > 16 || b2.size() > 16) break;
                    double m = oracle::brute_min_displacement(gp.space(), b1, b2);
                    if (m < 0.0) break;
                    oracle_d = std::min(oracle_d, std::max(1.0 / (r + 1), m));
                }
                if (std::fabs(oracle_d - expect) > 1e-9) pass = false;
            }
        }
    }
    MetricResult at_break = compact_distance(gp, {0, 0.0}, {0, 0.25}, 64);
    bool break_exact = at_break.resolved && at_break.value() == 1.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "lifted-path law max(1/(k+1), a) for k=1..20, worst error %.3g; endpoint "
                  "distance %s 1",
                  worst, break_exact ? "exactly" : "NOT");
    report(2, pass && break_exact, buf);
}

// criterion 3: near-pair isomorphism suite passes 1000/1000 for
// (eps, r) in {(0.2,3), (0.1,5), (0.05,8)} with delta = eps/(1+r*eps)
void criterion3() {
    Graphing g = c_alpha();
    bool pass = true;
    std::string detail = "near-pair suite:";
    for (auto [eps, r] : std::vector<std::pair<double, int>>{{0.2, 3}, {0.1, 5}, {0.05, 8}}) {
        C3Report rep = c3_check(g, eps, r, 1000, 7);
        bool ok = !rep.starved && rep.generated == 1000 && rep.passed == 1000;
        char buf[80];
        std::snprintf(buf, sizeof buf, " (eps=%.2f, r=%d): %d/%d", eps, r, rep.passed, rep.generated);
        detail += buf;
        if (!ok) pass = false;
    }
    report(3, pass, detail);
}

// criterion 4: symmetry exact, triangle inequality to 1e-9 on 10^4 triples,
// d0 <= d <= 1 on every resolved sample
void criterion4() {
    Graphing g = c_alpha();
    Rng rng(404);
    long triples = 0, sym_bad = 0, tri_bad = 0, bound_bad = 0;
    for (int i = 0; i < 10000; ++i) {
        Point x = g.space().sample_point(rng), y = g.space().sample_point(rng),
              z = g.space().sample_point(rng);
        MetricResult dxy = compact_distance(g, x, y), dyx = compact_distance(g, y, x),
                     dxz = compact_distance(g, x, z), dyz = compact_distance(g, y, z);
        if (dxy.resolved != dyx.resolved || (dxy.resolved && dxy.value() != dyx.value())) ++sym_bad;
        for (const auto& [d, a, b] :
             {std::tuple{&dxy, &x, &y}, std::tuple{&dxz, &x, &z}, std::tuple{&dyz, &y, &z}}) {
            if (d->resolved &&
                (d->value() > 1.0 || d->value() < g.space().base_distance(*a, *b) - 1e-12))
                ++bound_bad;
        }
        if (dxy.resolved && dxz.resolved && dyz.resolved) {
            ++triples;
            if (dxz.value() > dxy.value() + dyz.value() + 1e-9) ++tri_bad;
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "metric axioms: %ld resolved triples, %ld symmetry / %ld triangle / %ld bound "
                  "violations",
                  triples, sym_bad, tri_bad, bound_bad);
    report(4, sym_bad == 0 && tri_bad == 0 && bound_bad == 0 && triples > 5000, buf);
}

// criterion 5: measure-preservation gap within 4 sigma at n=10^6 for 20
// random rectangle pairs per built-in family, plus the closed-form edge
// measure 2(1-alpha) = 0.763932... to 1e-3
void criterion5() {
    std::vector<std::pair<std::string, Graphing>> families;
    families.push_back({"cycle-rotation", c_alpha()});
    families.push_back({"deleted-edge", c_alpha_prime()});
    families.push_back({"interval-exchange",
                        make_interval_exchange({{0.0, 1.0 - A, A}, {1.0 - A, 1.0, A - 1.0}})});
    families.push_back({"finite-graph", k3()});
    families.push_back({"union", make_weighted_union({{c_alpha(), 0.5}, {k3(), 0.5}})});

    bool pass = true;
    std::string detail = "measure preservation:";
    Rng rect_rng(505);
    for (const auto& [name, g] : families) {
        int ok = 0;
        for (int pair = 0; pair < 20; ++pair) {
            // random rectangles: intervals on continuous parts, atom subsets
            // on atom parts
            auto random_set = [&](int part) {
                if (g.space().parts()[part].kind == PartKind::Atoms) {
                    std::vector<int> atoms;
                    for (int a = 0; a < g.space().parts()[part].atom_count; ++a)
                        if (rect_rng.next_bool()) atoms.push_back(a);
                    if (atoms.empty()) atoms.push_back(0);
                    return IntervalSet::of_atoms(atoms, part);
                }
                double lo = rect_rng.uniform(0.0, 0.9);
                return IntervalSet::segment(lo, rect_rng.uniform(lo, 1.0), part);
            };
            int parts = static_cast<int>(g.space().parts().size());
            IntervalSet sa = random_set(static_cast<int>(rect_rng.next_below(parts)));
            IntervalSet sb = random_set(static_cast<int>(rect_rng.next_below(parts)));
            TwoSidedReport rep =
                unimodularity_gap(g, sa, sb, 1000000, 500 + 100 * pair);
            if (rep.pass) ++ok;
        }
        char buf[80];
        std::snprintf(buf, sizeof buf, " %s %d/20", name.c_str(), ok);
        detail += buf;
        if (ok != 20) pass = false;
    }

    EstimateReport eta = edge_measure(c_alpha(), IntervalSet::segment(0.0, 0.5),
                                      IntervalSet::segment(0.5, 1.0), 10000000, 606);
    double exact = 2 * (1.0 - A); // interval arithmetic over offsets {+a, -a}
    bool eta_ok = std::fabs(eta.estimate - exact) <= 1e-3;
    char buf[80];
    std::snprintf(buf, sizeof buf, "; eta estimate %.6f vs %.6f", eta.estimate, exact);
    detail += buf;
    report(5, pass && eta_ok, detail);
}

// criterion 6: TV distance of the fixture pair is 0 at r=3, n=10^5 per
// side; the triangle histogram equals its exact distribution
void criterion6() {
    BallStats sa = bs_histogram(c_alpha(), 3, 100000, 42);
    BallStats sp = bs_histogram(c_alpha_prime(), 3, 100000, 43);
    double tv = local_equivalence_tv(sa, sp);

    // exact distribution of the triangle: one class with probability 1,
    // keyed by the 1-ball at any atom (vertex-transitive brute force)
    Graphing gk = k3();
    std::set<std::string> keys;
    for (int atom = 0; atom < 3; ++atom)
        keys.insert(canonical_key(gk.ball({0, static_cast<double>(atom)}, 1)));
    BallStats sk = bs_histogram(gk, 1, 10000, 44);
    bool k3_ok = keys.size() == 1 && sk.histogram.size() == 1 &&
                 sk.histogram.count(*keys.begin()) == 1 &&
                 sk.histogram.at(*keys.begin()) == 1.0;

    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "local statistics: fixture-pair TV = %.3g; triangle histogram %s exact", tv,
                  k3_ok ? "matches" : "MISMATCHES");
    report(6, tv == 0.0 && k3_ok, buf);
}

// criterion 7: separation profile returns the first two orbit gaps to 1e-9
void criterion7() {
    auto prof = separation_profile(c_alpha(), 2, 200, 7);
    double e1 = prof.at(0).second, e2 = prof.at(1).second;
    bool pass = std::fabs(e1 - 0.3819660113) <= 1e-9 && std::fabs(e2 - 0.2360679775) <= 1e-9;
    char buf[120];
    std::snprintf(buf, sizeof buf, "separation eps(1)=%.10f eps(2)=%.10f", e1, e2);
    report(7, pass, buf);
}

// criterion 8: recurrence count for A=[0,0.1) at R=100 is 20 +- 5,
// nondecreasing, and exceeds R*lambda(A)/2 at R=10^4
void criterion8() {
    Graphing g = c_alpha();
    IntervalSet a = IntervalSet::segment(0.0, 0.1);
    auto prof = recurrence_profile(g, a, {0, 0.05}, 100);
    long at100 = prof.back().second;
    bool mono = true;
    long prev = 0;
    for (const auto& [r, count] : prof) {
        if (count < prev) mono = false;
        prev = count;
    }
    auto deep = recurrence_profile(g, a, {0, 0.05}, 10000, 200000);
    long at10k = deep.back().second;
    bool pass = at100 >= 15 && at100 <= 25 && mono && at10k >= 10000 * 0.1 / 2;
    char buf[120];
    std::snprintf(buf, sizeof buf, "recurrence: count(100)=%ld, count(10^4)=%ld, nondecreasing=%d",
                  at100, at10k, mono ? 1 : 0);
    report(8, pass, buf);
}

// criterion 9: depth-10 spiral towers from the broken rotation's path have
// <= D closure neighbors and in-support limits; support classification over
// 10^3 probes matches circle membership, and the path nodes u_k (k <= 20)
// are off-support at rho = 1/(2(k+1)); within 120 s
void criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    Graphing gp = c_alpha_prime();

    bool towers_ok = true;
    for (double target : {0.25, 0.5, 0.9}) {
        TowerBuildOptions opts;
        opts.target_coord = target;
        int k = 0;
        TowerBuildResult built = build_tower(
            gp,
            [&]() -> std::optional<Point> { return u_k(k++); }, 10, opts);
        if (!built.tower) {
            towers_ok = false;
            continue;
        }
        if (closure_neighbors(*built.tower).size() > 2) towers_ok = false;
        if (std::fabs(built.tower->limit_root().coord - target) > built.tower->residual)
            towers_ok = false;
        SupportClassification cls = support_classify(gp, *built.tower, 0.2, 300, 90);
        if (!cls.in_support) towers_ok = false;
    }

    // 10^3 random probes are almost surely circle points: all in-support
    int in_support = 0;
    Rng rng(909);
    for (int i = 0; i < 1000; ++i) {
        Point x = gp.space().sample_point(rng);
        if (support_classify(gp, x, 0.05, 200, 910 + i).in_support) ++in_support;
    }

    // path nodes are isolated: off-support at rho = 1/(2(k+1))
    int off_support = 0;
    for (int k = 1; k <= 20; ++k) {
        if (!support_classify(gp, u_k(k), 1.0 / (2.0 * (k + 1)), 200, 920 + k).in_support)
            ++off_support;
    }
    double dt = seconds_since(t0);
    bool pass = towers_ok && in_support == 1000 && off_support == 20 && dt <= 120.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "completion: towers %s; circle probes in-support %d/1000; path nodes "
                  "off-support %d/20; %.1f s",
                  towers_ok ? "ok" : "BAD", in_support, off_support, dt);
    report(9, pass, buf);
}

// criterion 10: branch-and-bound minimum equals the brute-force minimum on
// every generated test ball pair with <= 12 nodes
void criterion10() {
    Rng rng(1000);
    Graphing ga = c_alpha(), gp = c_alpha_prime(), gk = k3();
    Graphing k4 = make_finite_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
    Graphing cyc = make_finite_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    Graphing star = make_finite_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});

    long compared = 0, mismatches = 0;
    auto check_pair = [&](const GroundSpace& s, const RootedBall& b1, const RootedBall& b2) {
        if (b1.size() > 12 || b2.size() > 12) return;
        double oracle_min = oracle::brute_min_displacement(s, b1, b2);
        auto lib = min_displacement_iso(s, b1, b2);
        bool ok = oracle_min < 0.0 ? !lib.has_value()
                                   : lib.has_value() &&
                                         std::fabs(lib->displacement - oracle_min) <= 1e-12;
        ++compared;
        if (!ok) ++mismatches;
    };

    for (int r = 0; r <= 5; ++r) {
        for (int trial = 0; trial < 60; ++trial) {
            Point x = ga.space().sample_point(rng), y = ga.space().sample_point(rng);
            check_pair(ga.space(), ga.ball(x, r), ga.ball(y, r));
            check_pair(gp.space(), gp.ball(x, r), gp.ball(y, r));
            // pairs straddling the break, where ball shapes vary
            Point px = u_k(static_cast<int>(rng.next_below(8)));
            check_pair(gp.space(), gp.ball(px, r), gp.ball(y, r));
        }
    }
    for (const Graphing* g : {&gk, &k4, &cyc, &star}) {
        int n = g->space().parts()[0].atom_count;
        for (int r = 1; r <= 2; ++r)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    check_pair(g->space(), g->ball({0, double(i)}, r), g->ball({0, double(j)}, r));
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "oracle equivalence: %ld pairs compared, %ld mismatches",
                  compared, mismatches);
    report(10, compared > 1000 && mismatches == 0, buf);
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}

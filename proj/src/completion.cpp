#include "glab/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "glab/ball_iso.hpp"

namespace glab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// index of the node of `ball` matching point p, or -1
int find_node(const GroundSpace& space, const RootedBall& ball, const Point& p) {
    for (int i = 0; i < ball.size(); ++i)
        if (space.close(ball.nodes[i], p)) return i;
    return -1;
}

} // namespace

TowerBuildResult build_tower(const Graphing& g,
                             const std::function<std::optional<Point>()>& next_point, int depth,
                             const TowerBuildOptions& opts) {
    if (depth < 1) throw DomainError("build_tower: depth must be >= 1");

    TowerBuildResult result;
    const double c = opts.schedule_c;
    std::vector<Point> accepted; // accepted[j] anchors level j

    auto target_ok = [&](const Point& p, int level) {
        if (!opts.target_coord) return true;
        Point t{p.part, *opts.target_coord};
        return g.space().base_distance(p, t) <= c / std::exp2(level + 1);
    };

    while (result.scanned < opts.scan_budget &&
           static_cast<int>(accepted.size()) <= depth) {
        std::optional<Point> p = next_point();
        if (!p) break; // sequence exhausted
        ++result.scanned;
        int level = static_cast<int>(accepted.size());

        if (level == 0) {
            if (!target_ok(*p, 0)) continue;
            accepted.push_back(*p);
            result.reached_level = 0;
            continue;
        }
        if (!target_ok(*p, level)) continue;
        RootedBall prev;
        RootedBall cand;
        try {
            prev = g.ball(accepted[level - 1], level - 1, opts.node_cap);
            cand = g.ball(*p, level - 1, opts.node_cap);
        } catch (const ResourceError&) {
            continue;
        }
        auto iso = min_displacement_iso(g.space(), prev, cand);
        if (!iso || iso->displacement >= c / std::exp2(level - 1)) continue;
        accepted.push_back(*p);
        result.reached_level = level;
    }

    if (static_cast<int>(accepted.size()) <= depth) {
        result.diagnostics = "no stabilizing subsequence: reached level " +
                             std::to_string(result.reached_level) + " after scanning " +
                             std::to_string(result.scanned) + " points";
        return result;
    }

    // Pull limit coordinates back from the deepest accepted ball: compose
    // the per-level matchings up to the final anchor point.
    std::vector<RootedBall> raw(depth + 1);
    for (int r = 0; r <= depth; ++r) raw[r] = g.ball(accepted[r], r, opts.node_cap);

    LimitTower tower;
    tower.depth = depth;
    tower.residual = c / std::exp2(depth - 1);
    tower.levels.resize(depth + 1);
    tower.levels[depth] = raw[depth];

    for (int r = 0; r < depth; ++r) {
        // chain level-r nodes through successive anchors into raw[depth]
        RootedBall current = raw[r];
        std::vector<int> chain(current.size());
        for (int i = 0; i < current.size(); ++i) chain[i] = i;
        for (int j = r + 1; j <= depth; ++j) {
            RootedBall next_restricted = g.ball(accepted[j], r, opts.node_cap);
            auto iso = min_displacement_iso(g.space(), current, next_restricted);
            if (!iso) {
                // cannot happen for an accepted chain (restriction of the level iso)
                throw ValidationError("build_tower: coherence chain broke during assembly");
            }
            for (int& idx : chain) idx = iso->mapping[idx];
            current = next_restricted;
        }
        // map the radius-r restriction of the final anchor into raw[depth]
        tower.levels[r] = raw[r];
        for (int i = 0; i < raw[r].size(); ++i) {
            int k = find_node(g.space(), raw[depth], current.nodes[chain[i]]);
            if (k < 0) throw ValidationError("build_tower: final restriction mismatch");
            tower.levels[r].nodes[i] = raw[depth].nodes[k];
        }
    }

    result.tower = std::move(tower);
    result.diagnostics = "ok";
    return result;
}

TowerBuildResult build_tower(const Graphing& g, const std::vector<Point>& points, int depth,
                             const TowerBuildOptions& opts) {
    std::size_t i = 0;
    return build_tower(
        g,
        [&]() -> std::optional<Point> {
            if (i >= points.size()) return std::nullopt;
            return points[i++];
        },
        depth, opts);
}

LimitTower lift_point(const Graphing& g, const Point& x, int depth, std::size_t node_cap) {
    if (depth < 1) throw DomainError("lift_point: depth must be >= 1");
    LimitTower t;
    t.depth = depth;
    t.residual = 0.0;
    for (int r = 0; r <= depth; ++r) t.levels.push_back(g.ball(x, r, node_cap));
    return t;
}

MetricResult tower_distance(const GroundSpace& space, const LimitTower& t1, const LimitTower& t2) {
    if (t1.depth < 1 || t2.depth < 1) throw DomainError("tower_distance: towers must have depth >= 1");
    constexpr double kSlack = 1e-12;
    int r_cap = std::min(t1.depth, t2.depth);
    double res = t1.residual + t2.residual;

    MetricResult out;
    double best = kInf;
    double last_m = kInf;
    bool stopped = false;

    for (int r = 0; r <= r_cap; ++r) {
        auto iso = min_displacement_iso(space, t1.levels[r], t2.levels[r]);
        if (!iso) {
            stopped = true;
            break;
        }
        double m = iso->displacement;
        double cand = std::max(1.0 / (r + 1), m);
        if (cand < best - kSlack) {
            best = cand;
            out.witness_radius = r;
            out.witness = std::move(iso);
        }
        if (m >= 1.0 / (r + 1) - kSlack) {
            stopped = true;
            break;
        }
        last_m = m;
    }

    if (stopped) {
        if (best >= 1.0) {
            // the r=0 candidate max(1, d0) = 1 is exact regardless of residual
            out.resolved = true;
            out.value_lower = out.value_upper = 1.0;
        } else {
            out.resolved = res < kSlack;
            out.value_lower = std::max(0.0, best - res);
            out.value_upper = std::min(1.0, best + res);
        }
    } else {
        out.resolved = false;
        out.value_lower = std::max(0.0, std::min(best, last_m) - res);
        out.value_upper = std::min(1.0, best + res);
    }
    return out;
}

std::vector<LimitTower> closure_neighbors(const LimitTower& t) {
    if (t.depth < 2) throw DomainError("closure_neighbors: tower depth must be >= 2");
    const RootedBall& deep = t.deepest();

    std::vector<LimitTower> out;
    for (int nb : deep.adj[deep.root]) {
        const Point& nb_point = deep.nodes[nb];
        LimitTower nt;
        nt.depth = t.depth - 1;
        nt.residual = t.residual;
        for (int r = 0; r <= nt.depth; ++r) {
            const RootedBall& src = t.levels[r + 1];
            // locate the neighbor inside this level (limit coordinates are
            // shared across levels, so an exact-tolerance match exists)
            int s = -1;
            for (int i = 0; i < src.size(); ++i) {
                double d = std::fabs(src.nodes[i].coord - nb_point.coord);
                if (src.nodes[i].part == nb_point.part && (d < kPointTol || d > 1.0 - kPointTol)) {
                    s = i;
                    break;
                }
            }
            if (s < 0) throw ValidationError("closure_neighbors: neighbor missing from a level");

            // BFS inside the stored ball, radius r from the new root
            int n = src.size();
            std::vector<int> dist(n, -1), order;
            dist[s] = 0;
            order.push_back(s);
            for (std::size_t head = 0; head < order.size(); ++head) {
                int u = order[head];
                if (dist[u] == r) continue;
                for (int v : src.adj[u])
                    if (dist[v] < 0) {
                        dist[v] = dist[u] + 1;
                        order.push_back(v);
                    }
            }
            RootedBall ball;
            ball.radius = r;
            ball.root = 0;
            std::vector<int> remap(n, -1);
            for (std::size_t k = 0; k < order.size(); ++k) {
                remap[order[k]] = static_cast<int>(k);
                ball.nodes.push_back(src.nodes[order[k]]);
                ball.dist_from_root.push_back(dist[order[k]]);
            }
            ball.adj.assign(order.size(), {});
            for (const auto& [i, j] : src.edges) {
                if (remap[i] < 0 || remap[j] < 0) continue;
                int a = std::min(remap[i], remap[j]);
                int b = std::max(remap[i], remap[j]);
                ball.edges.push_back({a, b});
                ball.adj[a].push_back(b);
                ball.adj[b].push_back(a);
            }
            for (auto& a : ball.adj) std::sort(a.begin(), a.end());
            nt.levels.push_back(std::move(ball));
        }
        out.push_back(std::move(nt));
    }
    return out;
}

SupportClassification support_classify(const Graphing& g, const Point& p, double rho, long n,
                                       std::uint64_t seed, int r_max) {
    if (rho <= 0.0) throw DomainError("support_classify: rho must be positive");
    SupportClassification out;
    out.n = n;
    bool all_positive = true;
    for (double rho_t : {rho, rho / 2.0}) {
        // Once 1/(r+1) drops strictly below the threshold, the bracket from
        // an unresolved search already decides d < rho_t, so deeper radii
        // cannot change the hit count.
        int cap = r_max;
        double thr = std::floor(1.0 / rho_t);
        if (thr < cap) cap = std::max(0, static_cast<int>(thr));
        BallMeasureEstimate est = metric_ball_measure(g, p, rho_t, n, seed, cap);
        if (est.hits == 0) all_positive = false;
        out.measure_lower = est.lower;
        out.measure_upper = est.hits == 0 ? std::min(1.0, est.upper + 3.0 / n) : est.upper;
    }
    out.in_support = all_positive;
    return out;
}

SupportClassification support_classify(const Graphing& g, const LimitTower& t, double rho, long n,
                                       std::uint64_t seed) {
    if (rho <= 0.0) throw DomainError("support_classify: rho must be positive");
    SupportClassification out;
    out.n = n;
    long hits = 0, ambiguous = 0;
    for (long i = 0; i < n; ++i) {
        Rng rng = Rng::substream(seed, 0x5a9b, static_cast<std::uint64_t>(i));
        Point y = g.space().sample_point(rng);
        LimitTower ly = lift_point(g, y, t.depth);
        MetricResult d = tower_distance(g.space(), t, ly);
        if (d.value_upper < rho) ++hits;
        else if (d.value_lower < rho) ++ambiguous;
    }
    out.measure_lower = static_cast<double>(hits) / n;
    out.measure_upper = hits == 0 ? std::min(1.0, (ambiguous + 3.0) / n)
                                  : static_cast<double>(hits + ambiguous) / n;
    out.in_support = hits > 0;
    return out;
}

} // namespace glab

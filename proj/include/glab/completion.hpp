#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "glab/compact_metric.hpp"
#include "glab/graphing.hpp"

namespace glab {

// A completion point represented at finite depth: a coherent sequence of
// rooted balls, level r of radius r, whose node coordinates are the
// last-seen values of per-node Cauchy chains. `residual` bounds how far the
// recorded coordinates can still drift from the ideal limit.
struct LimitTower {
    std::vector<RootedBall> levels; // levels[r] has radius r
    int depth = 0;                  // levels.size() - 1
    double residual = 0.0;

    const RootedBall& deepest() const { return levels.back(); }
    Point limit_root() const { return levels.back().nodes[levels.back().root]; }
};

struct TowerBuildOptions {
    double schedule_c = 0.5;          // coherence tolerance schedule c/2^r
    std::size_t scan_budget = 100000; // candidate points examined before giving up
    std::optional<double> target_coord; // pin the root coordinate chain to this limit
    std::size_t node_cap = kDefaultNodeCap;
};

struct TowerBuildResult {
    std::optional<LimitTower> tower;
    std::string diagnostics;
    std::size_t scanned = 0;
    int reached_level = -1;
};

// Greedy subsequence selection mirroring the compactness proof: scan the
// supplied point sequence, accepting a point for level j when its
// (j-1)-ball matches the previous level by a root isomorphism of
// displacement < c/2^(j-1) (and, when a target is set, its root coordinate
// is within c/2^(j+1) of it). Level coordinates are then pulled back from
// the deepest accepted ball through the matching chain.
TowerBuildResult build_tower(const Graphing& g,
                             const std::function<std::optional<Point>()>& next_point, int depth,
                             const TowerBuildOptions& opts = {});

TowerBuildResult build_tower(const Graphing& g, const std::vector<Point>& points, int depth,
                             const TowerBuildOptions& opts = {});

// the tower of an ordinary point: levels are its actual balls, residual 0
LimitTower lift_point(const Graphing& g, const Point& x, int depth,
                      std::size_t node_cap = kDefaultNodeCap);

// Eq.-style metric on tower levels, with brackets widened by the residuals.
MetricResult tower_distance(const GroundSpace& space, const LimitTower& t1, const LimitTower& t2);

// towers re-rooted at the root's neighbors, one radius shallower;
// requires depth >= 2
std::vector<LimitTower> closure_neighbors(const LimitTower& t);

struct SupportClassification {
    bool in_support = false;
    double measure_lower = 0.0; // certain-hit frequency at the smallest tested radius
    double measure_upper = 0.0;
    long n = 0;
};

// in-support iff the estimated metric ball measure is positive at every
// tested radius; zero hits give the rule-of-three bracket [0, 3/n]
SupportClassification support_classify(const Graphing& g, const Point& p, double rho, long n,
                                       std::uint64_t seed, int r_max = kDefaultRMax);
SupportClassification support_classify(const Graphing& g, const LimitTower& t, double rho, long n,
                                       std::uint64_t seed);

} // namespace glab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "glab/ball_iso.hpp"
#include "glab/graphing.hpp"

namespace glab {

inline constexpr int kDefaultRMax = 64;

// d(x,y) = inf over r and r-neighborhood isomorphisms phi of
// max(1/(r+1), d0(phi)). Resolved results are exact (up to a 1e-12 slack in
// the stopping rule); unresolved results carry a certified bracket.
struct MetricResult {
    double value_lower = 0.0;
    double value_upper = 1.0;
    bool resolved = false;
    int witness_radius = -1;
    std::optional<NeighborhoodIso> witness;

    double value() const { return value_upper; }
};

// Evaluates the metric by iterating r = 0,1,2,...: m_r is the exact minimum
// displacement over r-neighborhood isomorphisms. Stops exactly once
// 1/(r+1) <= m_r (m_r is nondecreasing, so no larger radius can improve) or
// once no isomorphism exists at some radius; r_max reached first gives an
// unresolved bracket with value_lower = min(best, m_{r_max}).
MetricResult compact_distance(const Graphing& g, const Point& x, const Point& y,
                              int r_max = kDefaultRMax, std::size_t node_cap = kDefaultNodeCap);

struct C3Failure {
    Point x, y;
    double d;            // resolved compact distance of the pair
    double displacement; // best iso displacement found, or inf when none
};

// Claim-style check of condition (C3) with delta = eps/(1+r*eps): near pairs
// (generated by coordinate perturbation, accepted when resolved d <= delta)
// must admit an r-neighborhood isomorphism with displacement <= eps.
// Displacement is measured in d0 by default; `strict_metric_displacement`
// re-measures the found isomorphism in the compact metric d itself.
struct C3Report {
    double eps = 0.0;
    double delta = 0.0;
    int r = 0;
    int requested = 0;
    int generated = 0;
    int passed = 0;
    bool starved = false;
    std::vector<C3Failure> failures;
};

C3Report c3_check(const Graphing& g, double eps, int r, int n, std::uint64_t seed,
                  int r_max = kDefaultRMax, bool strict_metric_displacement = false);

// For t' = 1..t: the minimum resolved compact distance between n sampled
// roots and the points of their t'-balls (excluding the root); an empirical
// lower bound for the graph-distance/compact-metric separation.
std::vector<std::pair<int, double>> separation_profile(const Graphing& g, int t, int n,
                                                       std::uint64_t seed, int r_max = kDefaultRMax);

// Monte-Carlo estimate of lambda{y : d(x,y) < rho}; unresolved pairs whose
// bracket straddles rho are counted as ambiguous and widen the bracket.
struct BallMeasureEstimate {
    double lower = 0.0;
    double upper = 0.0;
    double stderr_ = 0.0;
    long n = 0;
    long hits = 0;
    long ambiguous = 0;
};

BallMeasureEstimate metric_ball_measure(const Graphing& g, const Point& x, double rho, long n,
                                        std::uint64_t seed, int r_max = kDefaultRMax);

} // namespace glab

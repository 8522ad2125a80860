#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glab/compact_metric.hpp"
#include "glab/graphing.hpp"

namespace glab {

// a.e. identities get 4-sigma statistical verdicts on seeded samples
struct EstimateReport {
    double estimate = 0.0;
    double stderr_ = 0.0;
    long n = 0;
    bool pass = true;
};

// paired two-sided estimate (both integrals from the same samples)
struct TwoSidedReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    double stderr_ = 0.0; // of the gap
    long n = 0;
    bool pass = true; // |gap| <= 4 stderr
};

// int_A deg_B dl - int_B deg_A dl, estimated from x ~ lambda
TwoSidedReport unimodularity_gap(const Graphing& g, const IntervalSet& A, const IntervalSet& B,
                                 long n, std::uint64_t seed);

// eta(A x B) = int_A deg_B dl
EstimateReport edge_measure(const Graphing& g, const IntervalSet& A, const IntervalSet& B, long n,
                            std::uint64_t seed);

// int_U |W cap B(x,r)| dl - int_W |U cap B(y,r)| dl
TwoSidedReport power_ball_identity(const Graphing& g, const IntervalSet& U, const IntervalSet& W,
                                   int r, long n, std::uint64_t seed,
                                   std::size_t node_cap = kDefaultNodeCap);

// sampled Benjamini-Schramm statistics: canonical r-ball class frequencies
struct BallStats {
    int radius = 0;
    long n = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> histogram; // canonical key -> frequency
};

BallStats bs_histogram(const Graphing& g, int r, long n, std::uint64_t seed,
                       std::size_t node_cap = kDefaultNodeCap);

// total-variation distance of two class histograms (equal radii required)
double local_equivalence_tv(const BallStats& s1, const BallStats& s2);

// exact |V cap A| within B(x,r) for r = 1..R, by BFS enumeration
std::vector<std::pair<int, long>> recurrence_profile(const Graphing& g, const IntervalSet& A,
                                                     const Point& x, int R,
                                                     std::size_t node_cap = kDefaultNodeCap);

// first z != x in the component (within graph radius R_explore) with
// resolved compact distance < eps, or nullopt
std::optional<Point> self_dense_probe(const Graphing& g, const Point& x, double eps, int R_explore,
                                      int r_max = kDefaultRMax,
                                      std::size_t node_cap = kDefaultNodeCap);

// proper greedy coloring in BFS order; at most max_degree + 1 colors
std::vector<int> greedy_ball_coloring(const RootedBall& b);

} // namespace glab

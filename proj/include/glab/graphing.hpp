#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "glab/ground_space.hpp"

namespace glab {

// One measure-preserving translation piece: [lo,hi) in `part` shifted by
// `offset` (mod 1 on circle parts, no wrap on interval parts).
struct TranslationPiece {
    int part = 0;
    double lo = 0.0;
    double hi = 0.0;
    double offset = 0.0;
};

// Partial atom permutation on one atoms part, as (from, to) pairs.
struct PermutationPiece {
    int part = 0;
    std::vector<std::pair<int, int>> mapping;
};

// Measure-preserving piecewise-translation bijection g; it contributes the
// edges x -- g(x). Sources must be pairwise disjoint and images pairwise
// disjoint; fixed points on positive measure are rejected by validate().
struct Generator {
    std::vector<TranslationPiece> translations;
    std::vector<PermutationPiece> permutations;

    std::optional<Point> apply(const GroundSpace& s, const Point& x) const;
    std::optional<Point> apply_inverse(const GroundSpace& s, const Point& x) const;
};

struct Edge {
    Point a, b;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
    void fail(std::string msg) {
        ok = false;
        issues.push_back(std::move(msg));
    }
};

// B(x,r): finite rooted ball with ground-space coordinates at each node.
// nodes[root] is the root; adjacency is the full induced subgraph.
struct RootedBall {
    std::vector<Point> nodes;
    int root = 0;
    int radius = 0;
    std::vector<int> dist_from_root;
    std::vector<std::vector<int>> adj;       // sorted neighbor index lists
    std::vector<std::pair<int, int>> edges;  // i < j

    int size() const { return static_cast<int>(nodes.size()); }
    int degree(int i) const { return static_cast<int>(adj[i].size()); }
    bool has_edge(int i, int j) const;
};

inline constexpr std::size_t kDefaultNodeCap = 100000;

// A graphing as a ground space, finitely many generators, and finite edge
// exception lists (null-set modifications, e.g. the deleted edge of C'_a).
class Graphing {
  public:
    Graphing(GroundSpace space, std::vector<Generator> generators, int degree_bound,
             std::vector<Edge> removed_edges = {}, std::vector<Edge> added_edges = {});

    const GroundSpace& space() const { return space_; }
    const std::vector<Generator>& generators() const { return generators_; }
    int degree_bound() const { return degree_bound_; }
    const std::vector<Edge>& removed_edges() const { return removed_edges_; }
    const std::vector<Edge>& added_edges() const { return added_edges_; }

    // images of x under all generators / inverses, dedup at tolerance,
    // exceptions applied; sorted by (part, coord)
    std::vector<Point> neighbors(const Point& x) const;

    // neighbor set from generators only (no exception lists)
    std::vector<Point> generator_neighbors(const Point& x) const;

    // breadth-first ball of radius r with full induced adjacency
    RootedBall ball(const Point& x, int radius, std::size_t node_cap = kDefaultNodeCap) const;

    // BFS distance, or nullopt when beyond cutoff
    std::optional<int> graph_distance(const Point& x, const Point& y, int cutoff,
                                      std::size_t node_cap = kDefaultNodeCap) const;

    ValidationReport validate() const;

  private:
    GroundSpace space_;
    std::vector<Generator> generators_;
    int degree_bound_;
    std::vector<Edge> removed_edges_;
    std::vector<Edge> added_edges_;

    bool edge_removed(const Point& x, const Point& y) const;
};

} // namespace glab

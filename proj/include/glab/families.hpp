#pragma once

#include <utility>
#include <vector>

#include "glab/graphing.hpp"

namespace glab {

// the irrational rotation angle used by the test fixtures (golden ratio
// conjugate, truncated as in the fixture definitions)
inline constexpr double kGoldenAlpha = 0.6180339887;

// C_alpha: unit circle, one rotation generator x -> x + alpha (mod 1), D = 2.
// Irrational alpha makes every component a two-way infinite path.
Graphing make_cycle_rotation(double alpha);

// C'_alpha-style null-set modification: records (x,y) on the removed list.
// Throws DomainError when (x,y) is not a current edge (including the case
// where it was already deleted).
Graphing delete_edge(const Graphing& g, const Point& x, const Point& y);

// adds a finite-exception edge; degrees must stay within the bound
Graphing add_edge(const Graphing& g, const Point& x, const Point& y);

// finite simple graph on atoms(n); the edge set is decomposed into matchings
// by greedy edge coloring (at most 2D-1 classes), one involution each
Graphing make_finite_graph(int n, const std::vector<std::pair<int, int>>& edges);

// interval exchange on [0,1): sources and images must both partition [0,1)
struct ExchangePiece {
    double lo = 0.0;
    double hi = 0.0;
    double offset = 0.0;
};

Graphing make_interval_exchange(const std::vector<ExchangePiece>& pieces);

// disjoint union with the given weights (must sum to 1)
Graphing make_weighted_union(const std::vector<std::pair<Graphing, double>>& components);

} // namespace glab

#include "glab/families.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace glab {

Graphing make_cycle_rotation(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("make_cycle_rotation: alpha must be in (0,1)");
    Generator rot;
    rot.translations.push_back({0, 0.0, 1.0, alpha});
    return Graphing(GroundSpace::circle(), {rot}, 2);
}

Graphing delete_edge(const Graphing& g, const Point& x, const Point& y) {
    bool is_edge = false;
    for (const Point& z : g.neighbors(x))
        if (g.space().close(z, y)) is_edge = true;
    if (!is_edge) throw DomainError("delete_edge: (x,y) is not an edge");

    auto removed = g.removed_edges();
    removed.push_back({x, y});
    return Graphing(g.space(), g.generators(), g.degree_bound(), std::move(removed), g.added_edges());
}

Graphing add_edge(const Graphing& g, const Point& x, const Point& y) {
    if (g.space().close(x, y)) throw DomainError("add_edge: edge on the diagonal");
    for (const Point& z : g.neighbors(x))
        if (g.space().close(z, y)) throw DomainError("add_edge: (x,y) is already an edge");
    if (static_cast<int>(g.neighbors(x).size()) + 1 > g.degree_bound() ||
        static_cast<int>(g.neighbors(y).size()) + 1 > g.degree_bound())
        throw DomainError("add_edge: degree bound exceeded");

    auto added = g.added_edges();
    added.push_back({x, y});
    return Graphing(g.space(), g.generators(), g.degree_bound(), g.removed_edges(), std::move(added));
}

Graphing make_finite_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 1) throw DomainError("make_finite_graph: need n >= 1");
    std::set<std::pair<int, int>> seen;
    std::vector<int> degree(n, 0);
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n) throw DomainError("make_finite_graph: node out of range");
        if (a == b) throw DomainError("make_finite_graph: loop edge");
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) throw DomainError("make_finite_graph: multi-edge");
        ++degree[a];
        ++degree[b];
    }
    int max_degree = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());

    // greedy proper edge coloring; each color class is a matching
    std::vector<std::vector<std::pair<int, int>>> matchings;
    std::vector<std::set<int>> colors_at(n);
    for (auto [a, b] : edges) {
        int c = 0;
        while (colors_at[a].count(c) || colors_at[b].count(c)) ++c;
        if (c >= static_cast<int>(matchings.size())) matchings.resize(c + 1);
        matchings[c].push_back({a, b});
        colors_at[a].insert(c);
        colors_at[b].insert(c);
    }

    std::vector<Generator> generators;
    for (const auto& matching : matchings) {
        Generator g;
        PermutationPiece piece;
        for (auto [a, b] : matching) {
            piece.mapping.push_back({a, b});
            piece.mapping.push_back({b, a});
        }
        g.permutations.push_back(std::move(piece));
        generators.push_back(std::move(g));
    }
    return Graphing(GroundSpace::atoms(n), std::move(generators), std::max(max_degree, 1));
}

Graphing make_interval_exchange(const std::vector<ExchangePiece>& pieces) {
    if (pieces.empty()) throw DomainError("make_interval_exchange: empty piece list");

    std::vector<std::pair<double, double>> sources, images;
    for (const auto& p : pieces) {
        if (p.lo >= p.hi) throw ValidationError("interval exchange: empty or reversed piece");
        if (std::fabs(p.offset) < 1e-15)
            throw ValidationError("interval exchange: identity piece (edges on the diagonal)");
        sources.push_back({p.lo, p.hi});
        images.push_back({p.lo + p.offset, p.hi + p.offset});
    }
    auto check_partition = [](std::vector<std::pair<double, double>> ivs, const std::string& what) {
        std::sort(ivs.begin(), ivs.end());
        double at = 0.0;
        for (const auto& [lo, hi] : ivs) {
            if (std::fabs(lo - at) > 1e-12)
                throw ValidationError("interval exchange: " + what + " do not partition [0,1)");
            at = hi;
        }
        if (std::fabs(at - 1.0) > 1e-12)
            throw ValidationError("interval exchange: " + what + " do not partition [0,1)");
    };
    check_partition(sources, "sources");
    check_partition(images, "images");

    Generator gen;
    for (const auto& p : pieces) gen.translations.push_back({0, p.lo, p.hi, p.offset});
    return Graphing(GroundSpace::interval(), {gen}, 2);
}

Graphing make_weighted_union(const std::vector<std::pair<Graphing, double>>& components) {
    std::vector<std::pair<GroundSpace, double>> spaces;
    for (const auto& [g, w] : components) spaces.push_back({g.space(), w});
    GroundSpace space = GroundSpace::weighted_union(spaces);

    std::vector<Generator> generators;
    std::vector<Edge> removed, added;
    int degree_bound = 0;
    int part_offset = 0;
    for (const auto& [g, w] : components) {
        for (Generator gen : g.generators()) {
            for (auto& t : gen.translations) t.part += part_offset;
            for (auto& p : gen.permutations) p.part += part_offset;
            generators.push_back(std::move(gen));
        }
        auto shift = [part_offset](Edge e) {
            e.a.part += part_offset;
            e.b.part += part_offset;
            return e;
        };
        for (const auto& e : g.removed_edges()) removed.push_back(shift(e));
        for (const auto& e : g.added_edges()) added.push_back(shift(e));
        degree_bound = std::max(degree_bound, g.degree_bound());
        part_offset += static_cast<int>(g.space().parts().size());
    }
    return Graphing(std::move(space), std::move(generators), degree_bound, std::move(removed),
                    std::move(added));
}

} // namespace glab

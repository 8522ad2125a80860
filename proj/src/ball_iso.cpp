#include "glab/ball_iso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace glab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::vector<char>> adjacency_matrix(const RootedBall& b) {
    int n = b.size();
    std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
    for (const auto& [i, j] : b.edges) m[i][j] = m[j][i] = 1;
    return m;
}

// Backtracking search over BFS-layer-respecting assignments. Source nodes
// are processed in (layer, degree, coordinate) order, so every node after
// the root already has an assigned neighbor when it is reached; candidate
// filtering does the full induced-subgraph consistency check against all
// previously assigned nodes.
struct IsoSearch {
    enum class Mode { Exists, Enumerate, Minimize };

    const GroundSpace& space;
    const RootedBall& b1;
    const RootedBall& b2;
    Mode mode;

    std::vector<std::vector<char>> adj1, adj2;
    std::vector<int> order;   // source node indices in assignment order
    std::vector<int> map;     // source -> target or -1
    std::vector<char> used;   // target already taken

    std::size_t limit = kDefaultIsoLimit;
    bool truncated = false;
    std::vector<NeighborhoodIso> found;

    double best = kInf;
    std::vector<int> best_map;

    IsoSearch(const GroundSpace& s, const RootedBall& a, const RootedBall& b, Mode m)
        : space(s), b1(a), b2(b), mode(m) {}

    static bool quick_reject(const RootedBall& a, const RootedBall& b) {
        if (a.size() != b.size()) return true;
        int n = a.size();
        std::vector<std::vector<int>> layer_a(a.radius + 1), layer_b(b.radius + 1);
        for (int i = 0; i < n; ++i) {
            layer_a[a.dist_from_root[i]].push_back(a.degree(i));
            layer_b[b.dist_from_root[i]].push_back(b.degree(i));
        }
        for (int r = 0; r <= a.radius; ++r) {
            std::sort(layer_a[r].begin(), layer_a[r].end());
            std::sort(layer_b[r].begin(), layer_b[r].end());
            if (layer_a[r] != layer_b[r]) return true;
        }
        return false;
    }

    bool run() {
        if (b1.radius != b2.radius) throw DomainError("iso search: radius mismatch");
        if (quick_reject(b1, b2)) return false;
        adj1 = adjacency_matrix(b1);
        adj2 = adjacency_matrix(b2);

        int n = b1.size();
        order.resize(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::swap(order[0], order[b1.root]);
        std::sort(order.begin() + 1, order.end(), [&](int i, int j) {
            if (b1.dist_from_root[i] != b1.dist_from_root[j])
                return b1.dist_from_root[i] < b1.dist_from_root[j];
            if (b1.degree(i) != b1.degree(j)) return b1.degree(i) < b1.degree(j);
            if (b1.nodes[i].part != b1.nodes[j].part) return b1.nodes[i].part < b1.nodes[j].part;
            if (b1.nodes[i].coord != b1.nodes[j].coord) return b1.nodes[i].coord < b1.nodes[j].coord;
            return i < j;
        });

        map.assign(n, -1);
        used.assign(n, 0);
        return extend(0, 0.0);
    }

    // returns true when the search can stop early (Exists mode hit, or limit)
    bool extend(int depth, double running_max) {
        int n = b1.size();
        if (depth == n) {
            switch (mode) {
                case Mode::Exists:
                    return true;
                case Mode::Enumerate:
                    found.push_back({map, running_max});
                    if (found.size() >= limit) {
                        truncated = true;
                        return true;
                    }
                    return false;
                case Mode::Minimize:
                    if (running_max < best) {
                        best = running_max;
                        best_map = map;
                    }
                    return false;
            }
        }

        int u = order[depth];
        std::vector<std::pair<double, int>> candidates;
        for (int w = 0; w < n; ++w) {
            if (used[w]) continue;
            if (depth == 0 && w != b2.root) continue;
            if (b2.dist_from_root[w] != b1.dist_from_root[u]) continue;
            if (b2.degree(w) != b1.degree(u)) continue;
            bool consistent = true;
            for (int d = 0; d < depth && consistent; ++d) {
                int v = order[d];
                if (adj1[u][v] != adj2[w][map[v]]) consistent = false;
            }
            if (!consistent) continue;
            double dz = space.base_distance(b1.nodes[u], b2.nodes[w]);
            if (mode == Mode::Minimize && std::max(running_max, dz) >= best) continue;
            candidates.push_back({dz, w});
        }
        if (mode == Mode::Minimize) {
            std::sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first < b.first;
                return a.second < b.second;
            });
        } else {
            std::sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
                const Point& pa = b2.nodes[a.second];
                const Point& pb = b2.nodes[b.second];
                if (pa.part != pb.part) return pa.part < pb.part;
                if (pa.coord != pb.coord) return pa.coord < pb.coord;
                return a.second < b.second;
            });
        }
        for (const auto& [dz, w] : candidates) {
            if (mode == Mode::Minimize && std::max(running_max, dz) >= best) continue;
            map[u] = w;
            used[w] = 1;
            bool stop = extend(depth + 1, std::max(running_max, dz));
            map[u] = -1;
            used[w] = 0;
            if (stop) return true;
        }
        return false;
    }
};

} // namespace

bool iso_exists(const GroundSpace& space, const RootedBall& b1, const RootedBall& b2) {
    IsoSearch s(space, b1, b2, IsoSearch::Mode::Exists);
    return s.run();
}

std::optional<NeighborhoodIso> min_displacement_iso(const GroundSpace& space, const RootedBall& b1,
                                                    const RootedBall& b2) {
    IsoSearch s(space, b1, b2, IsoSearch::Mode::Minimize);
    s.run();
    if (s.best == kInf) return std::nullopt;
    return NeighborhoodIso{std::move(s.best_map), s.best};
}

IsoEnumeration enumerate_isos(const GroundSpace& space, const RootedBall& b1, const RootedBall& b2,
                              std::size_t limit) {
    if (limit < 1) throw DomainError("enumerate_isos: limit must be >= 1");
    IsoSearch s(space, b1, b2, IsoSearch::Mode::Enumerate);
    s.limit = limit;
    s.run();
    return {std::move(s.found), s.truncated};
}

namespace {

// Minimal-BFS-code canonicalization. Candidate orders are the BFS orders of
// the ball starting at the root; at each head node we branch over the
// orderings of its undiscovered neighbors. The code chunk for a newly placed
// node (the sorted positions of its already-placed neighbors plus a -1
// sentinel) is final at placement time, so branches compare against the best
// code prefix-lexicographically and prune as soon as they go above it.
struct Canonicalizer {
    const RootedBall& b;
    std::vector<std::vector<char>> adj;
    std::vector<int> pos;   // node -> position or -1
    std::vector<int> order; // position -> node
    std::vector<int> code;
    std::vector<int> best;
    bool have_best = false;

    explicit Canonicalizer(const RootedBall& ball) : b(ball), adj(adjacency_matrix(ball)) {}

    std::string run() {
        int n = b.size();
        pos.assign(n, -1);
        order.reserve(n);
        pos[b.root] = 0;
        order.push_back(b.root);
        descend(0, true);

        std::string key = "v=" + std::to_string(n) + ";";
        for (int v : best) {
            key += std::to_string(v);
            key += '.';
        }
        return key;
    }

    // `tight`: the code built so far equals the best code on this prefix.
    // Only tight branches can be pruned; a branch that has already gone
    // strictly below the best code is explored to completion.
    void descend(int head, bool tight) {
        int n = b.size();
        if (static_cast<int>(order.size()) == n && head >= n) {
            if (!have_best || code < best) {
                best = code;
                have_best = true;
            }
            return;
        }
        if (head >= static_cast<int>(order.size())) return; // incomplete BFS; balls are connected
        int u = order[head];
        std::vector<int> fresh;
        for (int v = 0; v < n; ++v)
            if (adj[u][v] && pos[v] < 0) fresh.push_back(v);
        if (fresh.empty()) {
            descend(head + 1, tight);
            return;
        }
        std::vector<int> perm = fresh;
        do {
            std::size_t placed = 0;
            std::size_t code_mark = code.size();
            bool pruned = false;
            bool branch_tight = tight;
            for (int v : perm) {
                pos[v] = static_cast<int>(order.size());
                order.push_back(v);
                ++placed;
                std::vector<int> back;
                for (int w = 0; w < n; ++w)
                    if (adj[v][w] && pos[w] >= 0 && w != v) back.push_back(pos[w]);
                std::sort(back.begin(), back.end());
                back.push_back(-1);
                for (int x : back) {
                    code.push_back(x);
                    if (have_best && branch_tight) {
                        std::size_t i = code.size() - 1;
                        if (i >= best.size() || code[i] > best[i]) {
                            pruned = true;
                            break;
                        }
                        if (code[i] < best[i]) branch_tight = false;
                    }
                }
                if (pruned) break;
            }
            if (!pruned) descend(head + 1, branch_tight);
            while (placed-- > 0) {
                pos[order.back()] = -1;
                order.pop_back();
            }
            code.resize(code_mark);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
};

} // namespace

std::string canonical_key(const RootedBall& b) {
    Canonicalizer c(b);
    return c.run();
}

} // namespace glab

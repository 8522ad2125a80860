#include "glab/graphing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace glab {

namespace {

// Bucketed point index for tolerance-based dedup during BFS. Buckets are
// much wider than the tolerance, so a match can only live in the candidate
// bucket or one of its neighbors (plus the wrap buckets on circle parts).
class PointIndex {
  public:
    explicit PointIndex(const GroundSpace& space) : space_(space) {}

    std::optional<int> find(const Point& p) const {
        for (double shifted : probe_coords(p)) {
            long long b = bucket(shifted);
            for (long long probe = b - 1; probe <= b + 1; ++probe) {
                auto it = buckets_.find({p.part, probe});
                if (it == buckets_.end()) continue;
                for (const auto& [q, idx] : it->second)
                    if (space_.close(p, q)) return idx;
            }
        }
        return std::nullopt;
    }

    void insert(const Point& p, int idx) { buckets_[{p.part, bucket(p.coord)}].push_back({p, idx}); }

  private:
    static constexpr double kBucketWidth = 1e-6;

    static long long bucket(double coord) { return static_cast<long long>(std::floor(coord / kBucketWidth)); }

    std::vector<double> probe_coords(const Point& p) const {
        std::vector<double> out = {p.coord};
        if (space_.parts()[p.part].kind == PartKind::Circle) {
            if (p.coord < 2 * kBucketWidth) out.push_back(p.coord + 1.0);
            if (p.coord > 1.0 - 2 * kBucketWidth) out.push_back(p.coord - 1.0);
        }
        return out;
    }

    const GroundSpace& space_;
    std::map<std::pair<int, long long>, std::vector<std::pair<Point, int>>> buckets_;
};

} // namespace

std::optional<Point> Generator::apply(const GroundSpace& s, const Point& x) const {
    for (const auto& t : translations) {
        if (x.part != t.part || x.coord < t.lo || x.coord >= t.hi) continue;
        double y = x.coord + t.offset;
        if (s.parts()[t.part].kind == PartKind::Circle) {
            y = frac(y);
        } else if (y < 0.0 || y >= 1.0) {
            return std::nullopt;
        }
        return Point{x.part, y};
    }
    for (const auto& pp : permutations) {
        if (x.part != pp.part) continue;
        long long a = std::llround(x.coord);
        for (const auto& [from, to] : pp.mapping)
            if (from == a) return Point{x.part, static_cast<double>(to)};
    }
    return std::nullopt;
}

std::optional<Point> Generator::apply_inverse(const GroundSpace& s, const Point& y) const {
    for (const auto& t : translations) {
        if (y.part != t.part) continue;
        double pre;
        if (s.parts()[t.part].kind == PartKind::Circle) {
            pre = frac(y.coord - t.offset);
        } else {
            pre = y.coord - t.offset;
        }
        if (pre >= t.lo && pre < t.hi) return Point{y.part, pre};
    }
    for (const auto& pp : permutations) {
        if (y.part != pp.part) continue;
        long long b = std::llround(y.coord);
        for (const auto& [from, to] : pp.mapping)
            if (to == b) return Point{y.part, static_cast<double>(from)};
    }
    return std::nullopt;
}

bool RootedBall::has_edge(int i, int j) const {
    return std::binary_search(adj[i].begin(), adj[i].end(), j);
}

Graphing::Graphing(GroundSpace space, std::vector<Generator> generators, int degree_bound,
                   std::vector<Edge> removed_edges, std::vector<Edge> added_edges)
    : space_(std::move(space)),
      generators_(std::move(generators)),
      degree_bound_(degree_bound),
      removed_edges_(std::move(removed_edges)),
      added_edges_(std::move(added_edges)) {
    if (degree_bound_ < 0) throw DomainError("degree bound must be nonnegative");
}

bool Graphing::edge_removed(const Point& x, const Point& y) const {
    for (const auto& e : removed_edges_) {
        if (space_.close(e.a, x) && space_.close(e.b, y)) return true;
        if (space_.close(e.b, x) && space_.close(e.a, y)) return true;
    }
    return false;
}

std::vector<Point> Graphing::generator_neighbors(const Point& x) const {
    space_.require_valid(x);
    std::vector<Point> out;
    auto push = [&](const std::optional<Point>& y) {
        if (!y) return;
        if (space_.close(*y, x)) return; // edges avoid the diagonal
        for (const auto& z : out)
            if (space_.close(z, *y)) return;
        out.push_back(*y);
    };
    for (const auto& g : generators_) {
        push(g.apply(space_, x));
        push(g.apply_inverse(space_, x));
    }
    return out;
}

std::vector<Point> Graphing::neighbors(const Point& x) const {
    std::vector<Point> out = generator_neighbors(x);
    if (!removed_edges_.empty())
        std::erase_if(out, [&](const Point& y) { return edge_removed(x, y); });
    for (const auto& e : added_edges_) {
        std::optional<Point> other;
        if (space_.close(e.a, x)) other = e.b;
        else if (space_.close(e.b, x)) other = e.a;
        if (!other || space_.close(*other, x)) continue;
        bool present = false;
        for (const auto& z : out)
            if (space_.close(z, *other)) present = true;
        if (!present) out.push_back(*other);
    }
    std::sort(out.begin(), out.end(), [](const Point& a, const Point& b) {
        return a.part != b.part ? a.part < b.part : a.coord < b.coord;
    });
    return out;
}

RootedBall Graphing::ball(const Point& x, int radius, std::size_t node_cap) const {
    if (radius < 0) throw DomainError("ball: radius must be nonnegative");
    space_.require_valid(x);

    RootedBall b;
    b.root = 0;
    b.radius = radius;
    PointIndex index(space_);
    b.nodes.push_back(x);
    b.dist_from_root.push_back(0);
    index.insert(x, 0);

    for (std::size_t head = 0; head < b.nodes.size(); ++head) {
        int d = b.dist_from_root[head];
        if (d == radius) break; // queue is nondecreasing in distance
        Point p = b.nodes[head];
        for (const Point& y : neighbors(p)) {
            if (index.find(y)) continue;
            if (b.nodes.size() >= node_cap) throw ResourceError("ball: node cap exceeded");
            index.insert(y, static_cast<int>(b.nodes.size()));
            b.nodes.push_back(y);
            b.dist_from_root.push_back(d + 1);
        }
    }

    // full induced adjacency: cross edges found via generator images
    int n = b.size();
    b.adj.assign(n, {});
    for (int i = 0; i < n; ++i) {
        for (const Point& y : neighbors(b.nodes[i])) {
            auto j = index.find(y);
            if (!j || *j == i) continue;
            if (i < *j) {
                b.edges.push_back({i, *j});
                b.adj[i].push_back(*j);
                b.adj[*j].push_back(i);
            }
        }
    }
    for (auto& a : b.adj) std::sort(a.begin(), a.end());
    return b;
}

std::optional<int> Graphing::graph_distance(const Point& x, const Point& y, int cutoff,
                                            std::size_t node_cap) const {
    if (cutoff < 0) throw DomainError("graph_distance: cutoff must be nonnegative");
    space_.require_valid(x);
    space_.require_valid(y);
    if (space_.close(x, y)) return 0;

    PointIndex index(space_);
    std::vector<Point> nodes = {x};
    std::vector<int> dist = {0};
    index.insert(x, 0);
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        int d = dist[head];
        if (d == cutoff) break;
        for (const Point& z : neighbors(nodes[head])) {
            if (index.find(z)) continue;
            if (space_.close(z, y)) return d + 1;
            if (nodes.size() >= node_cap) throw ResourceError("graph_distance: node cap exceeded");
            index.insert(z, static_cast<int>(nodes.size()));
            nodes.push_back(z);
            dist.push_back(d + 1);
        }
    }
    return std::nullopt;
}

namespace {

// image intervals of a translation piece, split at the wrap point
std::vector<std::pair<double, double>> image_intervals(const GroundSpace& s, const TranslationPiece& t) {
    if (s.parts()[t.part].kind != PartKind::Circle) return {{t.lo + t.offset, t.hi + t.offset}};
    double a = frac(t.lo + t.offset);
    double len = t.hi - t.lo;
    if (a + len <= 1.0 + 1e-15) return {{a, a + len}};
    return {{a, 1.0}, {0.0, a + len - 1.0}};
}

void check_disjoint(ValidationReport& report, std::vector<std::pair<double, double>> ivs,
                    const std::string& what) {
    std::sort(ivs.begin(), ivs.end());
    for (std::size_t i = 0; i + 1 < ivs.size(); ++i)
        if (ivs[i].second > ivs[i + 1].first + 1e-12) {
            report.fail("bijectivity: overlapping " + what + " pieces");
            return;
        }
}

} // namespace

ValidationReport Graphing::validate() const {
    ValidationReport report;
    int n_parts = static_cast<int>(space_.parts().size());

    for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
        const Generator& g = generators_[gi];
        std::string tag = "generator " + std::to_string(gi) + ": ";

        std::vector<std::vector<std::pair<double, double>>> src(n_parts), img(n_parts);
        for (const auto& t : g.translations) {
            if (t.part < 0 || t.part >= n_parts) {
                report.fail(tag + "translation references unknown part");
                continue;
            }
            PartKind kind = space_.parts()[t.part].kind;
            if (kind == PartKind::Atoms) {
                report.fail(tag + "translation piece on an atoms part");
                continue;
            }
            if (t.lo < 0.0 || t.hi > 1.0 || t.lo >= t.hi) {
                report.fail(tag + "translation source outside [0,1) or empty");
                continue;
            }
            if (kind == PartKind::Interval && (t.lo + t.offset < -1e-15 || t.hi + t.offset > 1.0 + 1e-15))
                report.fail(tag + "translation image leaves [0,1) on an interval part");
            double off = kind == PartKind::Circle ? frac(t.offset) : t.offset;
            if (std::fabs(off) < 1e-15 || (kind == PartKind::Circle && std::fabs(off - 1.0) < 1e-15))
                report.fail(tag + "fixed points on positive measure (zero offset)");
            src[t.part].push_back({t.lo, t.hi});
            for (auto iv : image_intervals(space_, t)) img[t.part].push_back(iv);
        }
        for (int part = 0; part < n_parts; ++part) {
            check_disjoint(report, src[part], tag + "source");
            check_disjoint(report, img[part], tag + "image");
        }

        for (const auto& pp : g.permutations) {
            if (pp.part < 0 || pp.part >= n_parts ||
                space_.parts()[pp.part].kind != PartKind::Atoms) {
                report.fail(tag + "permutation piece not on an atoms part");
                continue;
            }
            int count = space_.parts()[pp.part].atom_count;
            std::set<int> froms, tos;
            for (const auto& [from, to] : pp.mapping) {
                if (from < 0 || from >= count || to < 0 || to >= count)
                    report.fail(tag + "permutation atom out of range");
                if (!froms.insert(from).second) report.fail(tag + "bijectivity: duplicate source atom");
                if (!tos.insert(to).second) report.fail(tag + "bijectivity: duplicate image atom");
                if (from == to) report.fail(tag + "fixed point atom " + std::to_string(from));
            }
        }
    }

    for (const auto& e : removed_edges_) {
        if (!space_.valid_point(e.a) || !space_.valid_point(e.b)) {
            report.fail("removed edge has invalid endpoint");
            continue;
        }
        bool is_edge = false;
        for (const Point& y : generator_neighbors(e.a))
            if (space_.close(y, e.b)) is_edge = true;
        if (!is_edge) report.fail("removed edge is not a generator edge");
    }

    for (const auto& e : added_edges_) {
        if (!space_.valid_point(e.a) || !space_.valid_point(e.b)) {
            report.fail("added edge has invalid endpoint");
            continue;
        }
        if (space_.close(e.a, e.b)) report.fail("added edge on the diagonal");
        if (static_cast<int>(neighbors(e.a).size()) > degree_bound_ ||
            static_cast<int>(neighbors(e.b).size()) > degree_bound_)
            report.fail("added edge pushes a degree above the bound");
    }

    // degree bound, spot-checked on a deterministic sample
    Rng rng(0x5eedULL);
    for (int i = 0; i < 256; ++i) {
        Point x = space_.sample_point(rng);
        if (static_cast<int>(neighbors(x).size()) > degree_bound_) {
            report.fail("sampled degree exceeds the stored bound");
            break;
        }
    }
    return report;
}

} // namespace glab

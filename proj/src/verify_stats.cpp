#include "glab/verify_stats.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <mutex>
#include <set>
#include <thread>

#include "glab/ball_iso.hpp"
#include "glab/parallel.hpp"

namespace glab {

namespace {

int degree_into(const Graphing& g, const Point& x, const IntervalSet& set) {
    int d = 0;
    for (const Point& y : g.neighbors(x))
        if (set.contains(y)) ++d;
    return d;
}

// One deterministic pass computing both sides and the paired gap: fn(i)
// returns (lhs_i, rhs_i); block sums are added in block order so the totals
// do not depend on the worker count.
template <typename Fn>
void paired_accumulate(long n, Fn&& fn, double& lhs_out, double& rhs_out, double& gap_out,
                       double& gapsq_out) {
    constexpr long kBlock = 8192;
    long n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<std::array<double, 4>> blocks(n_blocks, {0.0, 0.0, 0.0, 0.0});

    auto run_block = [&](long bi) {
        long lo = bi * kBlock, hi = std::min(n, lo + kBlock);
        std::array<double, 4> acc{0.0, 0.0, 0.0, 0.0};
        for (long i = lo; i < hi; ++i) {
            auto [l, r] = fn(i);
            double v = l - r;
            acc[0] += l;
            acc[1] += r;
            acc[2] += v;
            acc[3] += v * v;
        }
        blocks[bi] = acc;
    };

    int workers = worker_count();
    if (workers <= 1 || n_blocks <= 1) {
        for (long bi = 0; bi < n_blocks; ++bi) run_block(bi);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (long bi = next.fetch_add(1); bi < n_blocks; bi = next.fetch_add(1))
                    run_block(bi);
            });
        for (auto& th : pool) th.join();
    }
    lhs_out = rhs_out = gap_out = gapsq_out = 0.0;
    for (const auto& acc : blocks) {
        lhs_out += acc[0];
        rhs_out += acc[1];
        gap_out += acc[2];
        gapsq_out += acc[3];
    }
}

TwoSidedReport paired_report(long n, double sum, double sumsq, double lhs, double rhs) {
    TwoSidedReport rep;
    rep.n = n;
    rep.lhs = lhs / n;
    rep.rhs = rhs / n;
    rep.gap = sum / n;
    double var = std::max(0.0, sumsq / n - rep.gap * rep.gap);
    rep.stderr_ = std::sqrt(var / n);
    rep.pass = std::fabs(rep.gap) <= 4.0 * rep.stderr_ + 1e-15;
    return rep;
}

} // namespace

TwoSidedReport unimodularity_gap(const Graphing& g, const IntervalSet& A, const IntervalSet& B,
                                 long n, std::uint64_t seed) {
    if (n < 1) throw DomainError("unimodularity_gap: need n >= 1");
    double lhs_sum = 0.0, rhs_sum = 0.0, gap_sum = 0.0, gap_sq = 0.0;
    paired_accumulate(
        n,
        [&](long i) -> std::pair<double, double> {
            Rng rng = Rng::substream(seed, 0x01, static_cast<std::uint64_t>(i));
            Point x = g.space().sample_point(rng);
            bool in_a = A.contains(x), in_b = B.contains(x);
            if (!in_a && !in_b) return {0.0, 0.0};
            return {in_a ? degree_into(g, x, B) : 0.0, in_b ? degree_into(g, x, A) : 0.0};
        },
        lhs_sum, rhs_sum, gap_sum, gap_sq);
    return paired_report(n, gap_sum, gap_sq, lhs_sum, rhs_sum);
}

EstimateReport edge_measure(const Graphing& g, const IntervalSet& A, const IntervalSet& B, long n,
                            std::uint64_t seed) {
    if (n < 1) throw DomainError("edge_measure: need n >= 1");
    double sum = 0.0, sumsq = 0.0;
    blocked_accumulate(
        n,
        [&](long i) {
            Rng rng = Rng::substream(seed, 0x02, static_cast<std::uint64_t>(i));
            Point x = g.space().sample_point(rng);
            return A.contains(x) ? static_cast<double>(degree_into(g, x, B)) : 0.0;
        },
        sum, sumsq);
    EstimateReport rep;
    rep.n = n;
    rep.estimate = sum / n;
    double var = std::max(0.0, sumsq / n - rep.estimate * rep.estimate);
    rep.stderr_ = std::sqrt(var / n);
    return rep;
}

TwoSidedReport power_ball_identity(const Graphing& g, const IntervalSet& U, const IntervalSet& W,
                                   int r, long n, std::uint64_t seed, std::size_t node_cap) {
    if (r < 1) throw DomainError("power_ball_identity: need r >= 1");
    if (n < 1) throw DomainError("power_ball_identity: need n >= 1");
    double lhs_sum = 0.0, rhs_sum = 0.0, gap_sum = 0.0, gap_sq = 0.0;
    auto count_in = [&](const RootedBall& b, const IntervalSet& set) {
        long c = 0;
        for (const Point& p : b.nodes)
            if (set.contains(p)) ++c;
        return static_cast<double>(c);
    };
    paired_accumulate(
        n,
        [&](long i) -> std::pair<double, double> {
            Rng rng = Rng::substream(seed, 0x03, static_cast<std::uint64_t>(i));
            Point x = g.space().sample_point(rng);
            bool in_u = U.contains(x), in_w = W.contains(x);
            if (!in_u && !in_w) return {0.0, 0.0};
            RootedBall b = g.ball(x, r, node_cap);
            return {in_u ? count_in(b, W) : 0.0, in_w ? count_in(b, U) : 0.0};
        },
        lhs_sum, rhs_sum, gap_sum, gap_sq);
    return paired_report(n, gap_sum, gap_sq, lhs_sum, rhs_sum);
}

BallStats bs_histogram(const Graphing& g, int r, long n, std::uint64_t seed, std::size_t node_cap) {
    if (r < 0 || n < 1) throw DomainError("bs_histogram: need r >= 0 and n >= 1");
    BallStats stats;
    stats.radius = r;
    stats.n = n;
    stats.seed = seed;

    std::map<std::string, long> counts;
    std::mutex mtx;
    int workers = worker_count();
    auto run_range = [&](long lo, long hi) {
        std::map<std::string, long> local;
        for (long i = lo; i < hi; ++i) {
            Rng rng = Rng::substream(seed, 0x04, static_cast<std::uint64_t>(i));
            Point x = g.space().sample_point(rng);
            ++local[canonical_key(g.ball(x, r, node_cap))];
        }
        std::lock_guard<std::mutex> lock(mtx);
        for (const auto& [k, c] : local) counts[k] += c;
    };
    if (workers <= 1) {
        run_range(0, n);
    } else {
        std::vector<std::thread> pool;
        long chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            long lo = w * chunk, hi = std::min(n, lo + chunk);
            if (lo < hi) pool.emplace_back(run_range, lo, hi);
        }
        for (auto& t : pool) t.join();
    }
    for (const auto& [k, c] : counts) stats.histogram[k] = static_cast<double>(c) / n;
    return stats;
}

double local_equivalence_tv(const BallStats& s1, const BallStats& s2) {
    if (s1.radius != s2.radius) throw DomainError("local_equivalence_tv: radius mismatch");
    double tv = 0.0;
    std::set<std::string> keys;
    for (const auto& [k, _] : s1.histogram) keys.insert(k);
    for (const auto& [k, _] : s2.histogram) keys.insert(k);
    for (const auto& k : keys) {
        auto it1 = s1.histogram.find(k);
        auto it2 = s2.histogram.find(k);
        double p = it1 == s1.histogram.end() ? 0.0 : it1->second;
        double q = it2 == s2.histogram.end() ? 0.0 : it2->second;
        tv += std::fabs(p - q);
    }
    return 0.5 * tv;
}

std::vector<std::pair<int, long>> recurrence_profile(const Graphing& g, const IntervalSet& A,
                                                     const Point& x, int R, std::size_t node_cap) {
    if (R < 1) throw DomainError("recurrence_profile: need R >= 1");
    if (!A.contains(x)) throw DomainError("recurrence_profile: x must lie in A");

    RootedBall b = g.ball(x, R, node_cap);
    std::vector<long> hits_at(R + 1, 0);
    for (int i = 0; i < b.size(); ++i)
        if (A.contains(b.nodes[i])) ++hits_at[b.dist_from_root[i]];

    std::vector<std::pair<int, long>> out;
    long running = hits_at[0];
    for (int r = 1; r <= R; ++r) {
        running += hits_at[r];
        out.push_back({r, running});
    }
    return out;
}

std::optional<Point> self_dense_probe(const Graphing& g, const Point& x, double eps, int R_explore,
                                      int r_max, std::size_t node_cap) {
    if (eps <= 0.0) throw DomainError("self_dense_probe: eps must be positive");
    if (R_explore < 1) throw DomainError("self_dense_probe: need R_explore >= 1");

    RootedBall b = g.ball(x, R_explore, node_cap);
    std::vector<int> order;
    for (int i = 0; i < b.size(); ++i)
        if (i != b.root) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        if (b.dist_from_root[i] != b.dist_from_root[j]) return b.dist_from_root[i] < b.dist_from_root[j];
        if (b.nodes[i].part != b.nodes[j].part) return b.nodes[i].part < b.nodes[j].part;
        return b.nodes[i].coord < b.nodes[j].coord;
    });
    for (int i : order) {
        // d >= d0, so candidates farther than eps in d0 cannot be witnesses
        if (g.space().base_distance(x, b.nodes[i]) >= eps) continue;
        MetricResult d = compact_distance(g, x, b.nodes[i], r_max, node_cap);
        if (d.resolved && d.value() < eps) return b.nodes[i];
    }
    return std::nullopt;
}

std::vector<int> greedy_ball_coloring(const RootedBall& b) {
    std::vector<int> color(b.size(), -1);
    for (int i = 0; i < b.size(); ++i) { // nodes are already in BFS order
        std::set<int> taken;
        for (int j : b.adj[i])
            if (color[j] >= 0) taken.insert(color[j]);
        int c = 0;
        while (taken.count(c)) ++c;
        color[i] = c;
    }
    return color;
}

} // namespace glab

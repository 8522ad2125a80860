#include "glab/compact_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace glab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// slack for the stopping rule and strict-improvement comparisons; absorbs
// the last-ulp noise of displacement maxima
constexpr double kSlack = 1e-12;

} // namespace

MetricResult compact_distance(const Graphing& g, const Point& x, const Point& y, int r_max,
                              std::size_t node_cap) {
    if (r_max < 0) throw DomainError("compact_distance: r_max must be nonnegative");

    MetricResult res;
    double best = kInf;
    double last_m = kInf;

    for (int r = 0; r <= r_max; ++r) {
        RootedBall b1 = g.ball(x, r, node_cap);
        RootedBall b2 = g.ball(y, r, node_cap);
        auto iso = min_displacement_iso(g.space(), b1, b2);
        if (!iso) {
            // no isomorphism at this radius, hence none at any larger one
            res.resolved = true;
            res.value_lower = res.value_upper = best;
            return res;
        }
        double m = iso->displacement;
        double cand = std::max(1.0 / (r + 1), m);
        if (cand < best - kSlack) {
            best = cand;
            res.witness_radius = r;
            res.witness = std::move(iso);
        }
        if (m >= 1.0 / (r + 1) - kSlack) {
            res.resolved = true;
            res.value_lower = res.value_upper = best;
            return res;
        }
        last_m = m;
    }

    res.resolved = false;
    res.value_upper = best;
    res.value_lower = std::min(best, last_m);
    return res;
}

namespace {

// perturbed near pair on a continuous part, or nullopt when the space has
// no continuous mass
std::optional<std::pair<Point, Point>> perturbed_pair(const GroundSpace& space, double delta, Rng& rng) {
    double continuous_weight = 0.0;
    for (const auto& p : space.parts())
        if (p.kind != PartKind::Atoms) continuous_weight += p.weight;
    if (continuous_weight <= 0.0) return std::nullopt;

    // pick a continuous part by conditional weight
    double u = rng.next_double() * continuous_weight;
    int part = -1;
    double acc = 0.0;
    for (std::size_t i = 0; i < space.parts().size(); ++i) {
        if (space.parts()[i].kind == PartKind::Atoms) continue;
        acc += space.parts()[i].weight;
        part = static_cast<int>(i);
        if (u < acc) break;
    }
    Point x{part, rng.next_double()};
    double s = delta * (1.0 - rng.next_double()); // (0, delta]
    if (rng.next_bool()) s = -s;
    double yc;
    if (space.parts()[part].kind == PartKind::Circle) {
        yc = frac(x.coord + s);
    } else {
        yc = x.coord + s;
        if (yc < 0.0 || yc >= 1.0) return std::nullopt; // retry
    }
    return std::make_pair(x, Point{part, yc});
}

} // namespace

C3Report c3_check(const Graphing& g, double eps, int r, int n, std::uint64_t seed, int r_max,
                  bool strict_metric_displacement) {
    if (eps <= 0.0) throw DomainError("c3_check: eps must be positive");
    if (r < 0 || n < 1) throw DomainError("c3_check: need r >= 0 and n >= 1");

    C3Report report;
    report.eps = eps;
    report.r = r;
    report.delta = eps / (1.0 + r * eps);
    report.requested = n;

    double continuous_weight = 0.0;
    for (const auto& p : g.space().parts())
        if (p.kind != PartKind::Atoms) continuous_weight += p.weight;
    if (continuous_weight <= 0.0) {
        report.starved = true;
        return report;
    }

    long attempts = 0;
    const long attempt_budget = 400L * n;
    std::uint64_t draw = 0;

    while (report.generated < n && attempts < attempt_budget) {
        ++attempts;
        Rng rng = Rng::substream(seed, 0xc3, draw++);
        auto pair = perturbed_pair(g.space(), report.delta, rng);
        if (!pair) continue;
        auto [x, y] = *pair;
        MetricResult d = compact_distance(g, x, y, r_max);
        if (!d.resolved || d.value() > report.delta) continue;
        ++report.generated;

        RootedBall b1 = g.ball(x, r);
        RootedBall b2 = g.ball(y, r);
        auto iso = min_displacement_iso(g.space(), b1, b2);
        double disp = iso ? iso->displacement : kInf;
        if (iso && strict_metric_displacement) {
            // re-measure the d0-optimal isomorphism in d itself
            double worst = 0.0;
            for (int i = 0; i < b1.size() && worst <= eps; ++i) {
                MetricResult dz = compact_distance(g, b1.nodes[i], b2.nodes[iso->mapping[i]], r_max);
                worst = std::max(worst, dz.value_upper);
            }
            disp = worst;
        }
        if (disp <= eps + kSlack) {
            ++report.passed;
        } else {
            report.failures.push_back({x, y, d.value(), disp});
        }
    }
    report.starved = report.generated < n;
    return report;
}

std::vector<std::pair<int, double>> separation_profile(const Graphing& g, int t, int n,
                                                       std::uint64_t seed, int r_max) {
    if (t < 1 || n < 1) throw DomainError("separation_profile: need t >= 1 and n >= 1");
    std::vector<std::pair<int, double>> out;
    for (int tp = 1; tp <= t; ++tp) {
        double min_d = kInf;
        for (int i = 0; i < n; ++i) {
            Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(tp), static_cast<std::uint64_t>(i));
            Point x = g.space().sample_point(rng);
            RootedBall b = g.ball(x, tp);
            for (int j = 0; j < b.size(); ++j) {
                if (j == b.root) continue;
                MetricResult d = compact_distance(g, x, b.nodes[j], r_max);
                if (d.resolved) min_d = std::min(min_d, d.value());
            }
        }
        out.push_back({tp, min_d});
    }
    return out;
}

BallMeasureEstimate metric_ball_measure(const Graphing& g, const Point& x, double rho, long n,
                                        std::uint64_t seed, int r_max) {
    if (rho <= 0.0) throw DomainError("metric_ball_measure: rho must be positive");
    if (n < 1) throw DomainError("metric_ball_measure: need n >= 1");

    BallMeasureEstimate est;
    est.n = n;
    for (long i = 0; i < n; ++i) {
        Rng rng = Rng::substream(seed, 0xba11, static_cast<std::uint64_t>(i));
        Point y = g.space().sample_point(rng);
        MetricResult d = compact_distance(g, x, y, r_max);
        if (d.value_upper < rho) {
            ++est.hits;
        } else if (!d.resolved && d.value_lower < rho) {
            ++est.ambiguous;
        }
    }
    est.lower = static_cast<double>(est.hits) / n;
    est.upper = static_cast<double>(est.hits + est.ambiguous) / n;
    double p = 0.5 * (est.lower + est.upper);
    est.stderr_ = std::sqrt(std::max(p * (1.0 - p), 1.0 / n) / n);
    return est;
}

} // namespace glab

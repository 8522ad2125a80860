#include "glab/ground_space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace glab {

GroundSpace GroundSpace::circle() {
    GroundSpace s;
    s.parts_.push_back({PartKind::Circle, 0, 1.0});
    return s;
}

GroundSpace GroundSpace::interval() {
    GroundSpace s;
    s.parts_.push_back({PartKind::Interval, 0, 1.0});
    return s;
}

GroundSpace GroundSpace::atoms(int n) {
    if (n <= 0) throw DomainError("atoms: need n >= 1");
    GroundSpace s;
    s.parts_.push_back({PartKind::Atoms, n, 1.0});
    return s;
}

GroundSpace GroundSpace::weighted_union(const std::vector<std::pair<GroundSpace, double>>& components) {
    if (components.empty()) throw DomainError("weighted_union: empty component list");
    GroundSpace s;
    s.is_union_ = true;
    double total = 0.0;
    for (const auto& [sub, w] : components) {
        if (w < 0.0) throw DomainError("weighted_union: negative weight");
        total += w;
        for (Part p : sub.parts_) {
            p.weight *= w;
            s.parts_.push_back(p);
        }
    }
    if (std::fabs(total - 1.0) > 1e-12) throw ValidationError("weighted_union: weights must sum to 1");
    return s;
}

bool GroundSpace::valid_point(const Point& p) const {
    if (p.part < 0 || p.part >= static_cast<int>(parts_.size())) return false;
    const Part& part = parts_[p.part];
    if (part.kind == PartKind::Atoms) {
        double r = std::round(p.coord);
        return std::fabs(p.coord - r) < kPointTol && r >= 0.0 && r < part.atom_count;
    }
    return p.coord >= 0.0 && p.coord < 1.0;
}

void GroundSpace::require_valid(const Point& p) const {
    if (!valid_point(p))
        throw DomainError("invalid point: part=" + std::to_string(p.part) +
                          " coord=" + std::to_string(p.coord));
}

double GroundSpace::base_distance(const Point& x, const Point& y) const {
    require_valid(x);
    require_valid(y);
    if (x.part != y.part) return 1.0;
    const Part& part = parts_[x.part];
    switch (part.kind) {
        case PartKind::Circle: {
            double t = std::fabs(x.coord - y.coord);
            return std::min(t, 1.0 - t);
        }
        case PartKind::Interval:
            return std::fabs(x.coord - y.coord);
        case PartKind::Atoms:
            return std::llround(x.coord) == std::llround(y.coord) ? 0.0 : 1.0;
    }
    return 1.0;
}

Point GroundSpace::sample_point(Rng& rng) const {
    int part = 0;
    if (parts_.size() > 1) {
        double u = rng.next_double();
        double acc = 0.0;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            acc += parts_[i].weight;
            if (u < acc || i + 1 == parts_.size()) {
                part = static_cast<int>(i);
                break;
            }
        }
    }
    const Part& p = parts_[part];
    if (p.kind == PartKind::Atoms)
        return {part, static_cast<double>(rng.next_below(static_cast<std::uint64_t>(p.atom_count)))};
    return {part, rng.next_double()};
}

bool IntervalSet::contains(const Point& p) const {
    for (const auto& iv : intervals)
        if (iv.part == p.part && p.coord >= iv.lo && p.coord < iv.hi) return true;
    long long a = std::llround(p.coord);
    for (const auto& as : atom_sets)
        if (as.part == p.part)
            for (int atom : as.atoms)
                if (atom == a) return true;
    return false;
}

double measure(const GroundSpace& space, const IntervalSet& set) {
    const auto& parts = space.parts();
    double total = 0.0;

    // group intervals per part and check pairwise disjointness
    std::vector<std::vector<std::pair<double, double>>> per_part(parts.size());
    for (const auto& iv : set.intervals) {
        if (iv.part < 0 || iv.part >= static_cast<int>(parts.size()))
            throw ValidationError("interval set references unknown part");
        if (parts[iv.part].kind == PartKind::Atoms)
            throw ValidationError("interval piece on an atoms part");
        if (iv.lo < 0.0 || iv.hi > 1.0 || iv.lo > iv.hi)
            throw ValidationError("interval piece outside [0,1) or reversed");
        per_part[iv.part].push_back({iv.lo, iv.hi});
    }
    for (std::size_t part = 0; part < per_part.size(); ++part) {
        auto& ivs = per_part[part];
        std::sort(ivs.begin(), ivs.end());
        for (std::size_t i = 0; i + 1 < ivs.size(); ++i)
            if (ivs[i].second > ivs[i + 1].first + 1e-12)
                throw ValidationError("overlapping intervals in interval set");
        for (const auto& [lo, hi] : ivs) total += parts[part].weight * (hi - lo);
    }

    for (const auto& as : set.atom_sets) {
        if (as.part < 0 || as.part >= static_cast<int>(parts.size()))
            throw ValidationError("atom set references unknown part");
        const Part& p = parts[as.part];
        if (p.kind != PartKind::Atoms) throw ValidationError("atom piece on a continuous part");
        std::set<int> seen;
        for (int a : as.atoms) {
            if (a < 0 || a >= p.atom_count) throw ValidationError("atom index out of range");
            if (!seen.insert(a).second) throw ValidationError("duplicate atom in atom set");
        }
        total += p.weight * static_cast<double>(as.atoms.size()) / p.atom_count;
    }
    return total;
}

} // namespace glab

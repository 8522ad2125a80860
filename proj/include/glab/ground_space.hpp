#pragma once

#include <utility>
#include <vector>

#include "glab/errors.hpp"
#include "glab/rng.hpp"

namespace glab {

// Coordinate tolerance for point identity. Orbit points of irrational
// rotations never collide analytically; the tolerance only absorbs float
// drift accumulated along generator applications.
inline constexpr double kPointTol = 1e-9;

enum class PartKind { Circle, Interval, Atoms };

struct Part {
    PartKind kind = PartKind::Circle;
    int atom_count = 0; // Atoms only
    double weight = 1.0;
};

// A point of the ground space: part index (0 unless the space is a union)
// plus a coordinate in [0,1) for continuous parts or an atom index stored
// as an integral double.
struct Point {
    int part = 0;
    double coord = 0.0;
};

// fractional part, mapped into [0,1)
inline double frac(double t) {
    double f = t - static_cast<double>(static_cast<long long>(t));
    if (f < 0.0) f += 1.0;
    if (f >= 1.0) f = 0.0;
    return f;
}

// Concrete ground probability metric space (I, d0, lambda): unit circle,
// unit interval, finite atom set, or a weighted disjoint union of those.
class GroundSpace {
  public:
    static GroundSpace circle();
    static GroundSpace interval();
    static GroundSpace atoms(int n);
    // flattens nested unions; weights must be nonnegative and sum to 1
    static GroundSpace weighted_union(const std::vector<std::pair<GroundSpace, double>>& components);

    const std::vector<Part>& parts() const { return parts_; }
    bool is_union() const { return is_union_; }

    bool valid_point(const Point& p) const;
    void require_valid(const Point& p) const;

    // d0(x,y) in [0,1]: circle min-arc (circumference 1), interval |x-y|,
    // atoms discrete, cross-part 1.
    double base_distance(const Point& x, const Point& y) const;

    bool close(const Point& x, const Point& y) const { return base_distance(x, y) < kPointTol; }

    // lambda-distributed point: part chosen by weight, uniform within part
    Point sample_point(Rng& rng) const;

  private:
    std::vector<Part> parts_;
    bool is_union_ = false;
};

// Half-open interval [lo,hi) inside one continuous part.
struct IntervalPiece {
    int part = 0;
    double lo = 0.0;
    double hi = 0.0;
};

// Atom subset of one atoms part.
struct AtomPiece {
    int part = 0;
    std::vector<int> atoms;
};

// Finite union of intervals and atom subsets; the concrete stand-in for the
// Borel sets fed to measures and degree integrals.
struct IntervalSet {
    std::vector<IntervalPiece> intervals;
    std::vector<AtomPiece> atom_sets;

    bool contains(const Point& p) const;

    static IntervalSet segment(double lo, double hi, int part = 0) {
        IntervalSet s;
        s.intervals.push_back({part, lo, hi});
        return s;
    }
    static IntervalSet of_atoms(std::vector<int> atoms, int part = 0) {
        IntervalSet s;
        s.atom_sets.push_back({part, std::move(atoms)});
        return s;
    }
};

// lambda(A); throws ValidationError on overlapping pieces
double measure(const GroundSpace& space, const IntervalSet& set);

} // namespace glab

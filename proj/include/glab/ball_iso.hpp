#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glab/graphing.hpp"

namespace glab {

// Root-preserving isomorphism between two rooted balls of equal radius,
// with its displacement max_z d0(z, phi(z)).
struct NeighborhoodIso {
    std::vector<int> mapping; // source node index -> target node index
    double displacement = 0.0;
};

struct IsoEnumeration {
    std::vector<NeighborhoodIso> isos;
    bool truncated = false;
};

inline constexpr std::size_t kDefaultIsoLimit = 10000;

// true iff a root-preserving isomorphism b1 -> b2 exists; radii must match
bool iso_exists(const GroundSpace& space, const RootedBall& b1, const RootedBall& b2);

// exact minimum-displacement isomorphism via branch and bound, or nullopt
std::optional<NeighborhoodIso> min_displacement_iso(const GroundSpace& space, const RootedBall& b1,
                                                    const RootedBall& b2);

// all root-preserving isomorphisms, deterministic order, up to `limit`
IsoEnumeration enumerate_isos(const GroundSpace& space, const RootedBall& b1, const RootedBall& b2,
                              std::size_t limit = kDefaultIsoLimit);

// Canonical byte string: equal keys <=> root-preserving isomorphic balls,
// coordinates ignored. Lexicographically minimal BFS code over all child
// orderings.
std::string canonical_key(const RootedBall& b);

} // namespace glab

#pragma once

#include <cstdint>

namespace glab {

// splitmix64. Small, fast, and the output stream is fully determined by the
// seed, so runs are reproducible across platforms. Sub-streams are derived
// per (seed, stream, index); sample loops draw sample i from
// substream(seed, stream, i), which makes results independent of how samples
// are split across workers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
        return Rng(mix(mix(seed ^ 0x6a09e667f3bcc909ULL) + stream) + mix(index));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // uniform in {0,...,n-1}; n > 0
    std::uint64_t next_below(std::uint64_t n) {
        // modulo bias is < 2^-53 for desk-scale n
        return next_u64() % n;
    }

    bool next_bool() { return (next_u64() & 1u) != 0; }

  private:
    std::uint64_t state_;
};

} // namespace glab

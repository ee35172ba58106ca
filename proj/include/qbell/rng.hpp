#pragma once
// Deterministic counter-splittable RNG (splitmix64). Restart seeds are
// derived from a base seed and a counter so parallel schedules cannot
// change results.

#include <cstdint>

namespace qbell {

struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0,1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    int below(int n) { return int(next() % uint64_t(n)); }

    static uint64_t split(uint64_t seed, uint64_t counter) {
        SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (counter + 1)));
        return g.next();
    }
};

} // namespace qbell

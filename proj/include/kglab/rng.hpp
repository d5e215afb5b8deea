#pragma once

// Counter-based deterministic random numbers (splitmix64 finalizer).
// Each (seed, stream, index) triple maps to an independent value, so
// Monte-Carlo loops parallelize without any shared generator state and
// results do not depend on the thread count.

#include <cstdint>

namespace kglab {

struct CounterRng {
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                            std::uint64_t dim = 0) {
        std::uint64_t z = mix(seed ^ 0x6a09e667f3bcc909ULL);
        z = mix(z ^ stream * 0xd1342543de82ef95ULL);
        z = mix(z ^ index * 0xaf251af3b0f025b5ULL);
        return mix(z ^ dim * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform double in [0, 1).
    static double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                          std::uint64_t dim = 0) {
        return static_cast<double>(at(seed, stream, index, dim) >> 11) * 0x1.0p-53;
    }
};

}  // namespace kglab

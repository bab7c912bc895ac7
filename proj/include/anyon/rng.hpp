#pragma once

#include <cstdint>

namespace anyon {

// splitmix64: tiny counter-friendly generator. Deterministic across
// platforms, which the reproducible-CSV contract relies on. Independent
// streams are derived by hashing (seed, stream) so that per-trial streams do
// not depend on thread scheduling.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t v = (state += 0x9e3779b97f4a7c15ull);
        v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ull;
        v = (v ^ (v >> 27)) * 0x94d049bb133111ebull;
        return v ^ (v >> 31);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, m). Lemire multiply-shift; the slight modulo
    // bias at 64 bits is far below anything observable here.
    std::uint32_t below(std::uint32_t m) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next()) * m) >> 64);
    }

    bool bernoulli(double p) { return uniform() < p; }
};

// Stream derivation: decorrelates (seed, stream) pairs so that parallel
// workers can draw from disjoint deterministic streams.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (stream * 0xc2b2ae3d27d4eb4full + 0x165667b19e3779f9ull));
    g.next();
    return g.next();
}

} // namespace anyon

#pragma once

#include <cstdint>
#include <random>

namespace hawkes {

/// SplitMix64 step; full-period 64-bit mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Splittable stream contract: the engine for run r is a pure function of
/// (master seed, r), so parallel Monte Carlo batches are order-independent
/// and individually reproducible.
inline std::mt19937_64 make_stream(std::uint64_t master_seed, std::uint64_t run_index) {
    std::uint64_t s = master_seed ^ (0xd1342543de82ef95ULL * (run_index + 1));
    std::seed_seq seq{splitmix64(s), splitmix64(s), splitmix64(s), splitmix64(s)};
    return std::mt19937_64(seq);
}

} // namespace hawkes

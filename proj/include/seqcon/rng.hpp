#pragma once

#include <cstdint>

namespace seqcon {

/**
 * Deterministic splittable RNG stream.
 *
 * Each (seed, stream_id) pair yields an independent SplitMix64 sequence: the
 * starting state and the per-stream odd increment are both derived from the
 * pair by avalanche mixing (Stafford variant 13 finalizer), so sub-streams can
 * be handed to trials in any order on any number of workers and still
 * reproduce bit-identically.
 *
 * Streams are single-owner; never share one across threads.
 */
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : state_(mix(seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1))),
          gamma_(mix(state_ ^ 0x8000000000000000ULL) | 1ULL) {}

    std::uint64_t next_u64() {
        state_ += gamma_;
        return mix(state_);
    }

    // Uniform draw in the open interval (0,1), 53-bit resolution.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    std::uint64_t gamma_;
};

} // namespace seqcon

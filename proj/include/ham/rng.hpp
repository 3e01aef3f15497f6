#pragma once

#include <cstdint>

namespace ham {

// Seeded, reproducible 64-bit generator (xoshiro256++ seeded via splitmix64).
// Hand-rolled so that sequences are identical across platforms and standard
// library implementations; std::uniform_int_distribution is not portable.
class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform integer in [0, bound) by rejection; bound must be > 0.
    uint64_t below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool coin() { return (next_u64() & 1u) != 0; }

    bool bernoulli(double p) { return unit() < p; }

    static uint64_t splitmix64(uint64_t& state) {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4];
};

// Purpose tags for per-stage RNG streams. Every source of randomness in a
// trial draws from its own stream derived from (trial seed, purpose), so
// changing how one stage consumes randomness does not perturb the others.
enum class RngStream : uint64_t {
    process_pairs = 1,   // edge-process ordered-pair draws
    process_underlying,  // graph-process sampling without replacement
    process_coupling,    // redundant/loop decisions of the lift
    orient_coins,        // Step II A-A / B-B random orientations
    matching_tau,        // the random relabeling of the matcher
    merge_scan,          // restart scan order in the merge phase
    baseline_coins,      // baseline's uniform orientation
    trial_derive,        // per-trial seed derivation in sweeps
};

inline Rng make_stream(uint64_t seed, RngStream purpose) {
    uint64_t x = seed;
    uint64_t a = Rng::splitmix64(x);
    x = a ^ (0x6a09e667f3bcc909ULL * static_cast<uint64_t>(purpose));
    return Rng(Rng::splitmix64(x));
}

}  // namespace ham

#pragma once

// Seeded, splittable random streams.
//
// One root seed per run; every trial / instance / purpose gets its own
// stream whose state is derived by hashing (root, trial, purpose) with
// splitmix64.  Streams are xoshiro256++.  All samplers here are written
// out explicitly (no std::*_distribution) so that identical seeds give
// bit-identical values.

#include <array>
#include <cmath>
#include <cstdint>

#include "npplab/wide.hpp"

namespace npplab {

// Purpose tags for stream derivation.
enum class StreamPurpose : std::uint64_t {
    instance = 0x1,
    pair_fresh = 0x2,
    pair_keep = 0x3,
    rounding = 0x4,
    trial = 0x5,
    ball = 0x6,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t trial, std::uint64_t purpose) {
    std::uint64_t s = root;
    std::uint64_t a = splitmix64(s);
    s ^= trial * 0xff51afd7ed558ccdull;
    std::uint64_t b = splitmix64(s);
    s ^= purpose * 0xc4ceb9fe1a85ec53ull;
    std::uint64_t c = splitmix64(s);
    return a ^ (b << 1) ^ c;
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t trial, StreamPurpose p) {
    return derive_seed(root, trial, static_cast<std::uint64_t>(p));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64(s);
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1) with 53 random bits.
    double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (-1, 1).
    double next_symmetric() { return 2.0 * next_unit() - 1.0 + 0x1.0p-53; }

    // Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool bernoulli(double p) { return next_unit() < p; }

    // Standard Normal via Marsaglia polar, with one cached spare.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_unit() - 1.0;
            v = 2.0 * next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // Uniform integer in [-2^bits, 2^bits], the 2^(bits+1)+1 grid points
    // of [-1, 1] at scale 2^(-bits).
    Wide next_grid_point(int bits) {
        // Rejection from [0, 2^(bits+2)) onto [0, 2^(bits+1)].
        int draw_bits = bits + 2;
        int words = (draw_bits + 63) / 64;
        BigInt range = (BigInt(1) << (bits + 1)) + 1;
        for (;;) {
            BigInt r = 0;
            for (int w = 0; w < words; ++w) r = (r << 64) | next_u64();
            r >>= 64 * words - draw_bits;
            if (r < range) return Wide(r - (BigInt(1) << bits));
        }
    }

private:
    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace npplab

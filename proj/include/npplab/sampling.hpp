#pragma once

// Seeded instance sampling and coupled pair construction.
//
// Gaussian entries are generated at binary64 and quantized to scale
// 2^(-B); uniform_pm1 entries are exactly uniform on the 2^(B+1)+1 grid
// points of [-1, 1].  Correlated pairs are formed with a single exact
// rounding step, so the per-entry quantization error is <= 2^(-B-1).

#include <cstdint>

#include "npplab/model.hpp"
#include "npplab/rng.hpp"

namespace npplab {

enum class PairMode { correlated, resampled };

std::string pair_mode_name(PairMode m);
PairMode pair_mode_from_name(const std::string& name);

struct PairSample {
    Instance g;
    Instance g_prime;
    PairMode mode = PairMode::resampled;
    double epsilon = 0.0;
    CoordinateSet kept;  // resampled mode: coordinates where g'_i == g_i by construction
    std::uint64_t seed = 0;
};

// Round g * 2^B to the nearest integer, exactly (ties away from zero).
Wide quantize(double g, int scale_bits);

Instance sample_instance(int n, Dist dist, int scale_bits, std::uint64_t seed);

// g' = p g + sqrt(1 - p^2) g~ with p = 1 - epsilon, computed exactly from
// the quantized entries and re-quantized once.
PairSample correlated_pair(const Instance& g, double epsilon, std::uint64_t seed);

// Each coordinate of g' independently keeps g_i with probability 1 - epsilon,
// else is redrawn from the same distribution as g.
PairSample resampled_pair(const Instance& g, double epsilon, std::uint64_t seed);

// (1 - epsilon)^n, the resampled-pair equality probability.
double equality_prob(int n, double epsilon);

}  // namespace npplab

#pragma once

// Concrete coordinate-degree-D algorithms (juntas), stability trials
// against the 2CDepsN bound, and the rounding toolkit (clip, randomized
// rounding, flip probabilities, resampling representation).

#include <cstdint>
#include <vector>

#include "npplab/errors.hpp"
#include "npplab/model.hpp"
#include "npplab/rng.hpp"
#include "npplab/sampling.hpp"

namespace npplab {

enum class JuntaKind { sign_product, table };

// Each output coordinate depends on at most `degree` inputs (its block).
// sign_product outputs the product of input signs over the block; table
// maps the block's sign pattern (bit j set iff input j is positive,
// sign(0) = -1) to an arbitrary real.
struct JuntaAlgorithm {
    int n = 0;
    int degree = 0;
    JuntaKind kind = JuntaKind::sign_product;
    std::vector<std::vector<int>> blocks;          // per output, |block| <= degree
    std::vector<std::vector<double>> tables;       // table kind: per output, size 2^|block|

    void validate() const;

    // Disjoint blocks of size d covering [n] (last may be short); output i
    // uses the block containing coordinate i.
    static JuntaAlgorithm sign_product_blocks(int n, int d);
};

std::vector<double> eval_junta(const JuntaAlgorithm& a, const Instance& g);

struct StabilityReport {
    double eps = 0.0;
    PairMode mode = PairMode::resampled;
    std::uint64_t trials = 0;
    double mean_sq_dist = 0.0, sq_dist_ci = 0.0;   // mean +- 1.96 * stderr
    double mean_inner = 0.0, inner_ci = 0.0;
    double bound_14 = 0.0;                         // 2 C D eps N
    double c_norm = 0.0;                           // measured E||A(g)||^2 / N
};

// One coupled pair, exact squared distance and inner product of outputs.
struct StabilityTrial {
    double sq_dist;
    double inner;
    double norm_sq;  // ||A(g)||^2, for the empirical norm constant
};
StabilityTrial stability_trial(const JuntaAlgorithm& a, Dist dist, int scale_bits,
                               double eps, PairMode mode, std::uint64_t seed);

double stability_bound(double c_norm, int d, double eps, int n);

std::vector<double> clip(const std::vector<double>& y);

// Coordinate i is +1 with probability (clip(y)_i + 1) / 2, independently.
SignVector round_randomized(const std::vector<double>& y, std::uint64_t seed);

// Entrywise sign with sign(0) = -1.
SignVector round_deterministic(const std::vector<double>& y);

// p_i = |y_i - sign(y_i)| / 2 for clipped y; values in [0, 1/2].
std::vector<double> flip_probs(const std::vector<double>& y);

struct ResampleRound {
    SignVector x;
    int resampled = 0;  // number of coordinates drawn fresh from Unif{+-1}
};

// Equivalent-in-distribution rounding: resample coordinate i from
// Unif{+-1} with probability 2 p_i, else keep sign(y)_i.
ResampleRound round_via_resampling(const std::vector<double>& y, std::uint64_t seed);

}  // namespace npplab

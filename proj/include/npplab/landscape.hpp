#pragma once

// Landscape experiments: entropy/ball bounds, the eta certificate, the
// small-ball bound, conditional-obstruction trials, solution repulsion,
// and rounding-hardness trials, plus Wilson-interval aggregation.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "npplab/lowdeg.hpp"
#include "npplab/model.hpp"
#include "npplab/sampling.hpp"
#include "npplab/solvers.hpp"

namespace npplab {

// h(p) = -p log2 p - (1-p) log2 (1-p), with h(0) = h(1) = 0.
double binary_entropy(double p);

struct BallCount {
    BigInt exact;       // sum_{j<=k} C(n, j)
    double bound;       // 2^(n h(k/n)), valid for k <= n/2
    double weak_bound;  // 2^(2 n p log2(1/p))
};
BallCount ball_count(int n, int k);

// eta = E / (C' N log2(C N / E)) with C = 8, C' = 16; certifies
// eta in (0, 1/2) and 2 eta log2(1/eta) < E / (4N).
double eta_for(std::int64_t e, std::int64_t n);

// 2^(1-E) / sqrt(2 pi sigma^2), an upper bound on P(|Z| <= 2^-E) for
// Z ~ N(mu, sigma^2) with any mean.
double small_ball_bound(double e, double sigma_sq);

// Smallest k <= k_max with a solution of (g, lvl) exactly k flips from x;
// nullopt if none.  Work is sum_{j<=k_max} C(n, j), capped.
std::optional<int> nearest_solution_flips(const Instance& g, EnergyLevel lvl,
                                          const SignVector& x, int k_max);

struct ObstructionParams {
    int n = 0;
    int scale_bits = 0;
    Dist dist = Dist::gaussian;
    int energy = 0;
    double eps = 0.0;
    double eta = 0.0;          // 0 means: resolve via eta_for
    PairMode mode = PairMode::resampled;
    std::string solver = "bf";
    int ball_flips = -1;       // -1 means: resolve as floor(eta * n)
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    void resolve();            // fill eta / ball_flips, then validate
};

struct TrialRecord {
    std::uint64_t trial = 0;
    bool s_diff = false;       // g != g'
    bool s_solve_g = false;    // solver(g) in S(E; g)
    bool s_solve_gp = false;   // solver(g') in S(E; g')
    bool s_stable = false;     // ||x - x'|| <= 2 sqrt(eta n)
    bool s_cond = false;       // no solution of g' within the ball around x
    std::optional<int> nearest_flips;
    double elapsed_ms = 0.0;
};

TrialRecord obstruction_trial(const ObstructionParams& p, std::uint64_t trial_index);

// True iff distinct x, x' in S(E; g) exist within k sign flips.  The
// paper's J-reduction (a sub-sum of <= k magnitudes below threshold is
// necessary) prefilters; the decision itself enumerates S(E; g) and
// checks pairwise Hamming distances exactly.
bool repel_trial(const Instance& g, EnergyLevel lvl, int k);

struct RoundingTrialRecord {
    bool tilde_solves = false;   // round_via_resampling(clip(A(g))) in S(E; g)
    bool hat_solves = false;     // ball-improved point in S(E; g)
    bool hat_interior = false;   // ball around clip(A(g)) held no corner
    int resampled = 0;
};

RoundingTrialRecord rounding_hardness_trial(const JuntaAlgorithm& a, const Instance& g,
                                            EnergyLevel lvl, double r, std::uint64_t seed);

struct EstimateCI {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    double point = 0.0;
    double lo = 0.0, hi = 0.0;  // Wilson 95%
};

EstimateCI wilson_estimate(std::uint64_t successes, std::uint64_t trials);

using TrialSelector = std::function<bool(const TrialRecord&)>;

// Wilson estimate of P(event | condition) over the records.
EstimateCI aggregate(const std::vector<TrialRecord>& records, const TrialSelector& event,
                     const TrialSelector& condition);

}  // namespace npplab

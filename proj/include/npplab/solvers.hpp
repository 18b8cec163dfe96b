#pragma once

// Partitioning algorithms: exact enumeration (Gray code and meet-in-the-
// middle), the polynomial-time baselines (adjacent-pair greedy, largest
// differencing), the restricted brute-force hybrid, and the ball-restricted
// local improvement wrapper.

#include <cstdint>
#include <optional>
#include <vector>

#include "npplab/errors.hpp"
#include "npplab/model.hpp"

namespace npplab {

struct SolveResult {
    SignVector x;
    Wide disc_q = 0;  // |inner(g, x)| in q-units
    double energy = 0.0;
    std::uint64_t work = 0;  // objective evaluations
    double elapsed_ms = 0.0;
};

// Enumeration caps; NPPLAB_CAP_BITS scales them (expert use).
struct Caps {
    int bf_max_n;
    int enum_max_n;
    int mitm_max_n;
    std::uint64_t ball_work;
};
const Caps& caps();

// Exact global optimum over Sigma_N by Gray-code enumeration of the
// 2^(n-1) canonical states (x_0 = +1), incremental updates; ties broken
// by first reached in Gray order.
SolveResult brute_force(const Instance& g);

// Exact global optimum via meet-in-the-middle, n up to caps().mitm_max_n.
SolveResult mitm_min(const Instance& g);

struct EnumResult {
    std::vector<SignVector> solutions;  // canonical half (x_0 = +1), Gray order
    bool truncated = false;             // cap hit, distinct from empty
};
EnumResult enumerate_solutions(const Instance& g, EnergyLevel lvl, std::uint64_t cap);

// Exact |S(E; g)| (both antipodal halves) by sorted half-sums.
BigInt count_solutions_mitm(const Instance& g, EnergyLevel lvl);

// List S(E; g) restricted to the canonical half x_0 = +1, via sorted
// half-sum windows; order is deterministic but not Gray order.
std::vector<SignVector> list_solutions_mitm(const Instance& g, EnergyLevel lvl,
                                            std::uint64_t cap);

// Sort by magnitude, difference adjacent pairs, then largest-first greedy
// over the pair differences.
SolveResult greedy_adjacent(const Instance& g);

// Largest differencing method with constraint-forest two-coloring.
SolveResult karmarkar_karp(const Instance& g);

// Fix the first j_size coordinates as the search set J, solve the rest
// with Karmarkar-Karp, then exactly minimize over x_J by meet-in-the-middle.
SolveResult restricted_hybrid(const Instance& g, int j_size);

struct LocalImproveResult {
    bool interior = false;        // ball held no corner; z is the output
    std::vector<double> z;        // clip(y)
    SolveResult res;              // valid when !interior
};

// Best corner of Sigma_N within open Euclidean distance r of clip(y);
// ties broken lexicographically (+ before -).
LocalImproveResult local_improve(const Instance& g, const std::vector<double>& y, double r);

// Solver name dispatch: "bf", "mitm", "greedy", "kk", "hybrid:<j>",
// "improve:<r>" (local improvement of the Karmarkar-Karp output).
SolveResult solve_by_name(const std::string& name, const Instance& g);
bool valid_solver_name(const std::string& name);

}  // namespace npplab

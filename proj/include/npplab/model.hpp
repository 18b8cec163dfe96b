#pragma once

// Exact NPP model: instances, sign vectors, energy thresholds.
//
// An instance holds integers q_i at scale 2^(-B), so g_i = q_i * 2^(-B).
// Discrepancy comparisons are exact integer comparisons; the binary64
// energy value is derived from the exact integer and never used for
// membership decisions.

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "npplab/wide.hpp"

namespace npplab {

enum class Dist { gaussian, uniform_pm1 };

std::string dist_name(Dist d);
Dist dist_from_name(const std::string& name);

struct Instance {
    int n = 0;
    int scale_bits = 0;  // B
    Dist dist = Dist::gaussian;
    std::uint64_t seed = 0;
    std::vector<Wide> values;  // q_i, |q_i| < 2^(B+8)

    bool same_values(const Instance& other) const { return n == other.n && values == other.values; }
};

// Point of {+-1}^n, bit-packed; set bit means +1.  Padding bits are kept
// zero so equality is bitwise equality.
struct SignVector {
    int n = 0;
    std::vector<std::uint64_t> bits;

    SignVector() = default;
    explicit SignVector(int n_, bool all_plus = true) : n(n_), bits((n_ + 63) / 64, 0) {
        if (all_plus) {
            for (auto& w : bits) w = ~0ull;
            mask_padding();
        }
    }

    int sign(int i) const { return (bits[i >> 6] >> (i & 63)) & 1 ? +1 : -1; }
    bool is_plus(int i) const { return (bits[i >> 6] >> (i & 63)) & 1; }
    void set(int i, bool plus) {
        std::uint64_t m = 1ull << (i & 63);
        if (plus) bits[i >> 6] |= m; else bits[i >> 6] &= ~m;
    }
    void flip(int i) { bits[i >> 6] ^= 1ull << (i & 63); }

    void mask_padding() {
        if (n & 63) bits.back() &= (1ull << (n & 63)) - 1;
    }

    SignVector negated() const {
        SignVector r = *this;
        for (auto& w : r.bits) w = ~w;
        r.mask_padding();
        return r;
    }

    int hamming(const SignVector& other) const {
        int h = 0;
        for (size_t w = 0; w < bits.size(); ++w) h += std::popcount(bits[w] ^ other.bits[w]);
        return h;
    }

    bool operator==(const SignVector& other) const { return n == other.n && bits == other.bits; }

    // Signs as a "+-" string, coordinate 0 first.
    std::string to_string() const;
    static SignVector from_string(const std::string& s);

    // Lexicographic order with '+' before '-' at the first differing coordinate.
    bool lex_less(const SignVector& other) const {
        for (int i = 0; i < n; ++i) {
            bool a = is_plus(i), b = other.is_plus(i);
            if (a != b) return a;
        }
        return false;
    }
};

struct EnergyLevel {
    int e = 0;  // threshold is 2^(-e) in g-units, 2^(B-e) in q-units

    explicit EnergyLevel(int e_) : e(e_) {
        if (e_ < 0) throw std::invalid_argument("energy level must be nonnegative");
    }
};

// Margin rule: the threshold integer 2^(B-E) keeps >= 10 bits above the
// quantization granularity.
inline constexpr int kEnergyMarginBits = 10;

inline void check_margin(const Instance& g, EnergyLevel lvl) {
    if (lvl.e + kEnergyMarginBits > g.scale_bits)
        throw std::invalid_argument("energy level " + std::to_string(lvl.e) +
                                    " violates margin rule E + 10 <= B with B=" +
                                    std::to_string(g.scale_bits));
}

inline Wide threshold_q(const Instance& g, EnergyLevel lvl) {
    check_margin(g, lvl);
    return Wide(1) << (g.scale_bits - lvl.e);
}

// Subset of coordinates as a bitmask.
struct CoordinateSet {
    int n = 0;
    std::vector<std::uint64_t> mask;

    CoordinateSet() = default;
    explicit CoordinateSet(int n_) : n(n_), mask((n_ + 63) / 64, 0) {}

    static CoordinateSet full(int n_) {
        CoordinateSet s(n_);
        for (auto& w : s.mask) w = ~0ull;
        if (n_ & 63) s.mask.back() &= (1ull << (n_ & 63)) - 1;
        return s;
    }
    static CoordinateSet prefix(int n_, int k) {
        CoordinateSet s(n_);
        for (int i = 0; i < k; ++i) s.add(i);
        return s;
    }

    bool contains(int i) const { return (mask[i >> 6] >> (i & 63)) & 1; }
    void add(int i) { mask[i >> 6] |= 1ull << (i & 63); }
    int count() const {
        int c = 0;
        for (auto w : mask) c += std::popcount(w);
        return c;
    }
    CoordinateSet complement() const {
        CoordinateSet s(n);
        for (size_t w = 0; w < mask.size(); ++w) s.mask[w] = ~mask[w];
        if (n & 63) s.mask.back() &= (1ull << (n & 63)) - 1;
        return s;
    }
    bool operator==(const CoordinateSet& other) const { return n == other.n && mask == other.mask; }
};

// --- core operations -----------------------------------------------------

// Exact signed sum s = sum_i x_i q_i, so <g, x> = s * 2^(-B).
Wide inner(const Instance& g, const SignVector& x);

// E(x; g) = B - log2|s|; +inf when s = 0.
double energy(const Instance& g, const SignVector& x);
double energy_from_disc(const Instance& g, const Wide& s);

// x in S(E; g), i.e. |s| <= 2^(B-E).  Exact.
bool is_solution(const Instance& g, const SignVector& x, EnergyLevel lvl);

// Value of inner(g, x with coordinate i flipped), given s = inner(g, x).
Wide flip_delta(const Instance& g, const Wide& s, const SignVector& x, int i);

// Zero out coordinates outside S.
Instance restrict_to(const Instance& g, const CoordinateSet& s);

}  // namespace npplab

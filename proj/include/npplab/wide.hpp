#pragma once

// Exact wide-integer support for fixed-point NPP instances.
//
// Instance values are integers q at scale 2^(-B).  Inner products are
// accumulated in 256-bit signed integers; configurations needing more than
// 256 bits (scale_bits + 8 + ceil(log2 n) + 1) are rejected up front.

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace npplab {

using Wide = boost::multiprecision::int256_t;
// Arbitrary precision, used off the hot path (sampling, ball counts).
using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kAccumulatorBits = 256;

inline int log2_ceil(std::uint64_t v) {
    if (v <= 1) return 0;
    return 64 - std::countl_zero(v - 1);
}

// Bits required to accumulate n values of magnitude < 2^(scale_bits + 8).
inline int bits_needed(int scale_bits, int n) {
    return scale_bits + 8 + log2_ceil(static_cast<std::uint64_t>(n)) + 1;
}

inline void check_accumulator(int scale_bits, int n) {
    if (bits_needed(scale_bits, n) >= kAccumulatorBits)
        throw std::invalid_argument(
            "scale_bits=" + std::to_string(scale_bits) + ", n=" + std::to_string(n) +
            " would overflow the " + std::to_string(kAccumulatorBits) + "-bit accumulator");
}

inline int bit_length(const BigInt& v) {
    if (v == 0) return 0;
    return static_cast<int>(boost::multiprecision::msb(boost::multiprecision::abs(v))) + 1;
}

inline int bit_length(const Wide& v) {
    if (v == 0) return 0;
    return static_cast<int>(boost::multiprecision::msb(boost::multiprecision::abs(v))) + 1;
}

// log2|v| as binary64: exact bit length refined by one floating division.
template <typename Int>
inline double log2_abs(const Int& v) {
    int bits = bit_length(v);
    if (bits == 0) return -std::numeric_limits<double>::infinity();
    Int a = boost::multiprecision::abs(v);
    // Top 53 bits as a double mantissa.
    int shift = bits - 53;
    double mant;
    if (shift > 0)
        mant = static_cast<double>(std::uint64_t(a >> shift));
    else {
        mant = static_cast<double>(std::uint64_t(a << -shift));
    }
    return (bits - 53) + std::log2(mant);
}

// Shift right by k bits, rounding to nearest (ties away from zero).
inline BigInt shift_round(const BigInt& v, int k) {
    if (k <= 0) return v << -k;
    BigInt half = BigInt(1) << (k - 1);
    if (v >= 0) return (v + half) >> k;
    return -((-v + half) >> k);
}

// Two's-complement hex, most-significant byte first, minimal even-length
// encoding whose sign bit matches the value.  "ff" is -1, "00ff" is 255.
std::string wide_to_hex(const Wide& v);
Wide hex_to_wide(const std::string& hex);

}  // namespace npplab

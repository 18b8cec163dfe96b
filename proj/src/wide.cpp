#include "npplab/wide.hpp"

#include <vector>

namespace npplab {

std::string wide_to_hex(const Wide& v) {
    // Emit two's-complement bytes, most significant first.
    bool neg = v < 0;
    BigInt a = neg ? BigInt(-v) : BigInt(v);
    int bits = bit_length(a);
    int nbytes = (bits + 8) / 8;  // +1 bit of headroom for the sign
    if (nbytes == 0) nbytes = 1;
    BigInt tc = neg ? (BigInt(1) << (8 * nbytes)) - a : a;
    std::string out(static_cast<size_t>(2 * nbytes), '0');
    static const char* digits = "0123456789abcdef";
    for (int i = nbytes - 1; i >= 0; --i) {
        unsigned byte = static_cast<unsigned>(tc & 0xff);
        out[2 * i] = digits[byte >> 4];
        out[2 * i + 1] = digits[byte & 0xf];
        tc >>= 8;
    }
    return out;
}

Wide hex_to_wide(const std::string& hex) {
    if (hex.empty() || hex.size() % 2 != 0)
        throw std::invalid_argument("hex value must have even nonzero length: '" + hex + "'");
    BigInt acc = 0;
    for (char c : hex) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw std::invalid_argument("bad hex digit in '" + hex + "'");
        acc = (acc << 4) | d;
    }
    int nbits = static_cast<int>(hex.size()) * 4;
    if (boost::multiprecision::bit_test(acc, nbits - 1)) acc -= BigInt(1) << nbits;
    if (bit_length(acc) >= kAccumulatorBits)
        throw std::invalid_argument("hex value exceeds accumulator width");
    return Wide(acc);
}

}  // namespace npplab

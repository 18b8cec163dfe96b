#include "npplab/sampling.hpp"

#include <cmath>

namespace npplab {

std::string pair_mode_name(PairMode m) {
    return m == PairMode::correlated ? "correlated" : "resampled";
}

PairMode pair_mode_from_name(const std::string& name) {
    if (name == "correlated") return PairMode::correlated;
    if (name == "resampled") return PairMode::resampled;
    throw std::invalid_argument("unsupported pair mode '" + name + "'");
}

// Decompose a finite double as m * 2^s with m a <=53-bit integer.
static void split_double(double v, std::int64_t& m, int& s) {
    if (v == 0.0) { m = 0; s = 0; return; }
    int e;
    double f = std::frexp(v, &e);  // v = f * 2^e, |f| in [0.5, 1)
    m = std::llround(std::ldexp(f, 53));
    s = e - 53;
}

Wide quantize(double g, int scale_bits) {
    std::int64_t m;
    int s;
    split_double(g, m, s);
    int shift = s + scale_bits;
    BigInt q = shift > 0 ? BigInt(m) << shift : shift_round(BigInt(m), -shift);
    return Wide(q);
}

static void check_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in [0, 1]");
}

static Wide sample_entry(Rng& rng, Dist dist, int scale_bits) {
    if (dist == Dist::gaussian) return quantize(rng.next_gaussian(), scale_bits);
    return rng.next_grid_point(scale_bits);
}

Instance sample_instance(int n, Dist dist, int scale_bits, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (scale_bits < 16) throw std::invalid_argument("scale_bits must be >= 16");
    check_accumulator(scale_bits, n);
    Instance g;
    g.n = n;
    g.scale_bits = scale_bits;
    g.dist = dist;
    g.seed = seed;
    g.values.reserve(n);
    Rng rng(derive_seed(seed, 0, StreamPurpose::instance));
    for (int i = 0; i < n; ++i) g.values.push_back(sample_entry(rng, dist, scale_bits));
    return g;
}

PairSample correlated_pair(const Instance& g, double epsilon, std::uint64_t seed) {
    check_epsilon(epsilon);
    double p = 1.0 - epsilon;
    double c = std::sqrt(std::max(0.0, 1.0 - p * p));
    std::int64_t mp, mc;
    int sp, sc;
    split_double(p, mp, sp);
    split_double(c, mc, sc);

    PairSample out;
    out.g = g;
    out.mode = PairMode::correlated;
    out.epsilon = epsilon;
    out.seed = seed;
    out.g_prime = g;
    out.g_prime.seed = seed;

    Rng rng(derive_seed(seed, 0, StreamPurpose::pair_fresh));
    for (int i = 0; i < g.n; ++i) {
        Wide fresh = quantize(rng.next_gaussian(), g.scale_bits);
        // p*q + c*q~ as one exact sum at scale 2^min(sp,sc), rounded once.
        int smin = std::min(sp, sc);
        BigInt v = (BigInt(mp) * BigInt(g.values[i]) << (sp - smin)) +
                   (BigInt(mc) * BigInt(fresh) << (sc - smin));
        out.g_prime.values[i] = Wide(shift_round(v, -smin));
    }
    return out;
}

PairSample resampled_pair(const Instance& g, double epsilon, std::uint64_t seed) {
    check_epsilon(epsilon);
    double p = 1.0 - epsilon;

    PairSample out;
    out.g = g;
    out.mode = PairMode::resampled;
    out.epsilon = epsilon;
    out.seed = seed;
    out.g_prime = g;
    out.g_prime.seed = seed;
    out.kept = CoordinateSet(g.n);

    Rng keep_rng(derive_seed(seed, 0, StreamPurpose::pair_keep));
    Rng fresh_rng(derive_seed(seed, 0, StreamPurpose::pair_fresh));
    for (int i = 0; i < g.n; ++i) {
        if (keep_rng.bernoulli(p)) {
            out.kept.add(i);
        } else {
            out.g_prime.values[i] = sample_entry(fresh_rng, g.dist, g.scale_bits);
        }
    }
    return out;
}

double equality_prob(int n, double epsilon) {
    check_epsilon(epsilon);
    return std::pow(1.0 - epsilon, n);
}

}  // namespace npplab

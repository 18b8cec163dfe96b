#include "npplab/lowdeg.hpp"

#include <cmath>

namespace npplab {

void JuntaAlgorithm::validate() const {
    if (n < 1 || degree < 1) throw SchemaError("junta requires n >= 1, degree >= 1");
    if (static_cast<int>(blocks.size()) != n) throw SchemaError("junta needs one block per output");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(blocks[i].size()) > degree)
            throw SchemaError("junta block " + std::to_string(i) + " exceeds degree bound");
        for (int j : blocks[i])
            if (j < 0 || j >= n) throw SchemaError("junta block index out of range");
    }
    if (kind == JuntaKind::table) {
        if (static_cast<int>(tables.size()) != n) throw SchemaError("table junta needs one table per output");
        for (int i = 0; i < n; ++i)
            if (tables[i].size() != (size_t{1} << blocks[i].size()))
                throw SchemaError("table " + std::to_string(i) + " has wrong size");
    }
}

JuntaAlgorithm JuntaAlgorithm::sign_product_blocks(int n, int d) {
    JuntaAlgorithm a;
    a.n = n;
    a.degree = d;
    a.kind = JuntaKind::sign_product;
    a.blocks.resize(n);
    for (int i = 0; i < n; ++i) {
        int lo = (i / d) * d;
        int hi = std::min(lo + d, n);
        for (int j = lo; j < hi; ++j) a.blocks[i].push_back(j);
    }
    a.validate();
    return a;
}

std::vector<double> eval_junta(const JuntaAlgorithm& a, const Instance& g) {
    if (a.n != g.n) throw SchemaError("junta/instance dimension mismatch");
    std::vector<double> out(a.n);
    for (int i = 0; i < a.n; ++i) {
        if (a.kind == JuntaKind::sign_product) {
            int prod = 1;
            for (int j : a.blocks[i])
                if (!(g.values[j] > 0)) prod = -prod;  // sign(0) = -1
            out[i] = prod;
        } else {
            std::uint64_t idx = 0;
            for (size_t k = 0; k < a.blocks[i].size(); ++k)
                if (g.values[a.blocks[i][k]] > 0) idx |= std::uint64_t(1) << k;
            out[i] = a.tables[i][idx];
        }
    }
    return out;
}

StabilityTrial stability_trial(const JuntaAlgorithm& a, Dist dist, int scale_bits,
                               double eps, PairMode mode, std::uint64_t seed) {
    Instance g = sample_instance(a.n, dist, scale_bits, derive_seed(seed, 0, StreamPurpose::instance));
    PairSample pair = mode == PairMode::correlated
                          ? correlated_pair(g, eps, derive_seed(seed, 1, StreamPurpose::pair_fresh))
                          : resampled_pair(g, eps, derive_seed(seed, 1, StreamPurpose::pair_fresh));
    std::vector<double> u = eval_junta(a, pair.g);
    std::vector<double> v = eval_junta(a, pair.g_prime);
    StabilityTrial t{0.0, 0.0, 0.0};
    for (int i = 0; i < a.n; ++i) {
        double d = u[i] - v[i];
        t.sq_dist += d * d;
        t.inner += u[i] * v[i];
        t.norm_sq += u[i] * u[i];
    }
    return t;
}

double stability_bound(double c_norm, int d, double eps, int n) {
    return 2.0 * c_norm * d * eps * n;
}

std::vector<double> clip(const std::vector<double>& y) {
    std::vector<double> z(y.size());
    for (size_t i = 0; i < y.size(); ++i) z[i] = std::clamp(y[i], -1.0, 1.0);
    return z;
}

SignVector round_randomized(const std::vector<double>& y, std::uint64_t seed) {
    std::vector<double> z = clip(y);
    int n = static_cast<int>(z.size());
    SignVector x(n, false);
    Rng rng(derive_seed(seed, 0, StreamPurpose::rounding));
    for (int i = 0; i < n; ++i) {
        double u = rng.next_symmetric();
        x.set(i, z[i] - u > 0);  // sign(z_i - U_i), sign(0) = -1
    }
    return x;
}

SignVector round_deterministic(const std::vector<double>& y) {
    int n = static_cast<int>(y.size());
    SignVector x(n, false);
    for (int i = 0; i < n; ++i) x.set(i, y[i] > 0);
    return x;
}

std::vector<double> flip_probs(const std::vector<double>& y) {
    std::vector<double> z = clip(y);
    std::vector<double> p(z.size());
    for (size_t i = 0; i < z.size(); ++i) {
        double s = z[i] > 0 ? 1.0 : -1.0;
        p[i] = std::abs(z[i] - s) / 2.0;
    }
    return p;
}

ResampleRound round_via_resampling(const std::vector<double>& y, std::uint64_t seed) {
    std::vector<double> z = clip(y);
    std::vector<double> p = flip_probs(z);
    int n = static_cast<int>(z.size());
    ResampleRound out;
    out.x = SignVector(n, false);
    Rng rng(derive_seed(seed, 0, StreamPurpose::rounding));
    for (int i = 0; i < n; ++i) {
        bool resample = rng.bernoulli(2.0 * p[i]);
        if (resample) {
            ++out.resampled;
            out.x.set(i, rng.next_u64() & 1);
        } else {
            out.x.set(i, z[i] > 0);
        }
    }
    return out;
}

}  // namespace npplab

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "npplab/lowdeg.hpp"
#include "util.hpp"

using namespace npplab;
using namespace npplab::testutil;

TEST_CASE("eval_junta: sign_product basics") {
    JuntaAlgorithm sign1 = JuntaAlgorithm::sign_product_blocks(4, 1);
    Instance g = ints({5, -3, 0, 7}, 20);
    std::vector<double> out = eval_junta(sign1, g);
    CHECK(out == std::vector<double>{1, -1, -1, 1});  // sign(0) = -1

    JuntaAlgorithm sign2 = JuntaAlgorithm::sign_product_blocks(2, 2);
    std::vector<double> pm = eval_junta(sign2, ints({5, -3}, 20));
    CHECK(pm == std::vector<double>{-1, -1});  // product of (+,-) on the shared block

    CHECK_THROWS_AS(eval_junta(sign1, ints({1, 2}, 20)), SchemaError);
}

TEST_CASE("eval_junta: table kind and locality") {
    JuntaAlgorithm a;
    a.n = 3;
    a.degree = 2;
    a.kind = JuntaKind::table;
    a.blocks = {{0, 1}, {1, 2}, {2}};
    a.tables = {{0.1, 0.2, 0.3, 0.4}, {-1.0, 0.5, 2.0, -0.5}, {7.0, 8.0}};
    a.validate();

    Instance g = ints({1, -1, 1}, 20);
    std::vector<double> out = eval_junta(a, g);
    CHECK(out[0] == 0.2);  // bit0 = sign(g_0) > 0
    CHECK(out[1] == 2.0);  // bit1 = sign(g_2) > 0
    CHECK(out[2] == 8.0);

    // perturbing a coordinate outside block i never changes output i
    for (std::uint64_t m = 0; m < 8; ++m) {
        Instance h = g;
        for (int i = 0; i < 3; ++i) h.values[i] = (m >> i & 1) ? 1 : -1;
        std::vector<double> base = eval_junta(a, h);
        for (int j = 0; j < 3; ++j) {
            Instance p = h;
            p.values[j] = -p.values[j];
            std::vector<double> moved = eval_junta(a, p);
            for (int i = 0; i < 3; ++i) {
                bool in_block = false;
                for (int b : a.blocks[i]) in_block |= b == j;
                if (!in_block) CHECK(moved[i] == base[i]);
            }
        }
    }
}

TEST_CASE("junta validation rejects malformed specs") {
    JuntaAlgorithm a = JuntaAlgorithm::sign_product_blocks(6, 2);
    CHECK_NOTHROW(a.validate());
    a.blocks[0] = {0, 1, 2};
    CHECK_THROWS_AS(a.validate(), SchemaError);  // block exceeds degree
    a = JuntaAlgorithm::sign_product_blocks(6, 2);
    a.blocks[3] = {6};
    CHECK_THROWS_AS(a.validate(), SchemaError);  // index out of range
    a = JuntaAlgorithm::sign_product_blocks(6, 2);
    a.kind = JuntaKind::table;
    CHECK_THROWS_AS(a.validate(), SchemaError);  // missing tables
}

TEST_CASE("stability_trial: eps 0 resampled is motionless") {
    JuntaAlgorithm a = JuntaAlgorithm::sign_product_blocks(16, 2);
    for (int t = 0; t < 20; ++t) {
        StabilityTrial s = stability_trial(a, Dist::gaussian, 32, 0.0, PairMode::resampled, t);
        CHECK(s.sq_dist == 0.0);
        CHECK(s.inner == 16.0);
        CHECK(s.norm_sq == 16.0);
    }
}

TEST_CASE("stability_trial: analytic resampled sign_product law") {
    const int n = 32, d = 2, trials = 20000;
    const double eps = 0.2;
    JuntaAlgorithm a = JuntaAlgorithm::sign_product_blocks(n, d);
    double inner_sum = 0, inner_sq = 0, sq_sum = 0, sq_sq = 0;
    for (int t = 0; t < trials; ++t) {
        StabilityTrial s = stability_trial(a, Dist::gaussian, 24, eps, PairMode::resampled,
                                           derive_seed(404, t, StreamPurpose::trial));
        inner_sum += s.inner;
        inner_sq += s.inner * s.inner;
        sq_sum += s.sq_dist;
        sq_sq += s.sq_dist * s.sq_dist;
    }
    double mean_inner = inner_sum / trials;
    double se_inner = std::sqrt((inner_sq / trials - mean_inner * mean_inner) / trials);
    double expect_inner = n * std::pow(1 - eps, d);
    CHECK(std::abs(mean_inner - expect_inner) < 4 * se_inner);

    double mean_sq = sq_sum / trials;
    double se_sq = std::sqrt((sq_sq / trials - mean_sq * mean_sq) / trials);
    double expect_sq = 2.0 * n * (1 - std::pow(1 - eps, d));
    CHECK(std::abs(mean_sq - expect_sq) < 4 * se_sq);
    CHECK(mean_sq <= stability_bound(1.0, d, eps, n) + 4 * se_sq);
}

TEST_CASE("stability_trial: correlated-mode arcsine law for sign blocks") {
    // For (1-eps)-correlated Gaussians, two signs agree with probability
    // 1 - arccos(1-eps)/pi, so E<A(g),A(g')> = N ((2/pi) arcsin(1-eps))^D.
    // Note the per-coordinate drift is Theta(sqrt(eps)), not eps: the
    // 2CDepsN inequality belongs to the resampled coupling for this family.
    const int n = 32, d = 4, trials = 10000;
    const double eps = 0.1;
    JuntaAlgorithm a = JuntaAlgorithm::sign_product_blocks(n, d);
    double in_sum = 0, in_sq = 0;
    for (int t = 0; t < trials; ++t) {
        StabilityTrial s = stability_trial(a, Dist::gaussian, 24, eps, PairMode::correlated,
                                           derive_seed(505, t, StreamPurpose::trial));
        in_sum += s.inner;
        in_sq += s.inner * s.inner;
    }
    double mean = in_sum / trials;
    double se = std::sqrt((in_sq / trials - mean * mean) / trials);
    double expect = n * std::pow(2.0 / M_PI * std::asin(1.0 - eps), d);
    CHECK(std::abs(mean - expect) < 4 * se);
}

TEST_CASE("stability_bound arithmetic") {
    CHECK(stability_bound(1.0, 1, 0.0, 50) == 0.0);
    CHECK(stability_bound(1.0, 2, 0.25, 100) == 100.0);
    // 1 - (1-eps)^D <= D*eps, so the bound dominates the analytic mean
    for (int d : {1, 2, 4, 8})
        for (double eps = 0.0; eps <= 1.0; eps += 0.05) {
            double analytic = 2.0 * 64 * (1 - std::pow(1 - eps, d));
            CHECK(analytic <= stability_bound(1.0, d, eps, 64) + 1e-9);
        }
}

TEST_CASE("clip: clamp and Lipschitz") {
    CHECK(clip({2, -3, 0.5}) == std::vector<double>{1, -1, 0.5});
    std::vector<double> in{-0.4, 0.0, 0.99};
    CHECK(clip(in) == in);

    Rng rng(9);
    for (int t = 0; t < 10000; ++t) {
        std::vector<double> a(6), b(6);
        for (int i = 0; i < 6; ++i) {
            a[i] = 6 * rng.next_unit() - 3;
            b[i] = 6 * rng.next_unit() - 3;
        }
        auto ca = clip(a), cb = clip(b);
        double dc = 0, d = 0;
        for (int i = 0; i < 6; ++i) {
            dc += (ca[i] - cb[i]) * (ca[i] - cb[i]);
            d += (a[i] - b[i]) * (a[i] - b[i]);
        }
        CHECK(dc <= d + 1e-12);
    }
}

TEST_CASE("round_randomized: endpoint determinism and frequencies") {
    for (int t = 0; t < 50; ++t) {
        SignVector x = round_randomized({1, -1, 1}, t);
        CHECK(x.to_string() == "+-+");
    }
    int plus_half = 0, plus_zero = 0;
    const int draws = 100000;
    for (int t = 0; t < draws; ++t) {
        SignVector x = round_randomized({0.5, 0.0}, derive_seed(3, t, StreamPurpose::rounding));
        plus_half += x.is_plus(0);
        plus_zero += x.is_plus(1);
    }
    CHECK(std::abs(plus_half / double(draws) - 0.75) < 4 * std::sqrt(0.75 * 0.25 / draws));
    CHECK(std::abs(plus_zero / double(draws) - 0.5) < 4 * std::sqrt(0.25 / draws));
}

TEST_CASE("round_deterministic: sign with sign(0) = -1") {
    CHECK(round_deterministic({0.5, -1, 0}).to_string() == "+--");
    CHECK(round_deterministic({1, -1, 1, -1}).to_string() == "+-+-");
}

TEST_CASE("flip_probs: Eq-style formula") {
    std::vector<double> p = flip_probs({0.5, -1, 0});
    CHECK(p[0] == doctest::Approx(0.25));
    CHECK(p[1] == 0.0);
    CHECK(p[2] == doctest::Approx(0.5));
    for (double v : flip_probs({1, -1, 1})) CHECK(v == 0.0);
    for (double v : flip_probs({0.3, -0.9, 2.5, 0.0})) {
        CHECK(v >= 0.0);
        CHECK(v <= 0.5);
    }
}

TEST_CASE("round_via_resampling: corners never resample") {
    for (int t = 0; t < 50; ++t) {
        ResampleRound r = round_via_resampling({1, -1, -1, 1}, t);
        CHECK(r.resampled == 0);
        CHECK(r.x.to_string() == "+--+");
    }
}

TEST_CASE("round_via_resampling: per-coordinate law equals round_randomized") {
    // P(+1) under resampling: 2p * 1/2 + (1 - 2p) * [sign(z) = +1], which
    // collapses to (z + 1) / 2 on both branches.
    for (double z = -1.0; z <= 1.0 + 1e-9; z += 0.125) {
        double p = std::abs(z - (z > 0 ? 1.0 : -1.0)) / 2.0;
        double keep_plus = z > 0 ? 1.0 : 0.0;
        double p_resample = p + (1 - 2 * p) * keep_plus;
        CHECK(p_resample == doctest::Approx((z + 1) / 2).epsilon(1e-14));
    }
    // empirical agreement on a fixed vector
    const int draws = 200000;
    std::vector<double> y{0.3, -0.7, 0.0, 0.9};
    std::vector<int> ca(4, 0), cb(4, 0);
    for (int t = 0; t < draws; ++t) {
        SignVector a = round_randomized(y, derive_seed(1, t, StreamPurpose::rounding));
        SignVector b = round_via_resampling(y, derive_seed(2, t, StreamPurpose::rounding)).x;
        for (int i = 0; i < 4; ++i) {
            ca[i] += a.is_plus(i);
            cb[i] += b.is_plus(i);
        }
    }
    for (int i = 0; i < 4; ++i) {
        double pa = ca[i] / double(draws), pb = cb[i] / double(draws);
        double expect = (std::clamp(y[i], -1.0, 1.0) + 1) / 2;
        CHECK(std::abs(pa - expect) < 4 * std::sqrt(expect * (1 - expect) / draws) + 1e-9);
        CHECK(std::abs(pb - expect) < 4 * std::sqrt(expect * (1 - expect) / draws) + 1e-9);
    }
}

TEST_CASE("round_via_resampling: divergence when every p_i is 1/2") {
    // all-zero input: P(no coordinate resampled) = 0, so x is uniform
    std::vector<double> y(64, 0.0);
    int match = 0;
    for (int t = 0; t < 2000; ++t) {
        ResampleRound r = round_via_resampling(y, derive_seed(8, t, StreamPurpose::rounding));
        CHECK(r.resampled == 64);  // 2 p_i = 1: always resampled
        match += r.x == round_deterministic(y);
    }
    CHECK(match == 0);  // probability 2^-64
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "npplab/landscape.hpp"
#include "util.hpp"

using namespace npplab;
using namespace npplab::testutil;

TEST_CASE("binary_entropy") {
    CHECK(binary_entropy(0.5) == 1.0);
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781245).epsilon(1e-9));
    for (double p = 0.0; p <= 0.5; p += 0.01)
        CHECK(binary_entropy(p) == doctest::Approx(binary_entropy(1 - p)).epsilon(1e-12));
    CHECK_THROWS_AS(binary_entropy(-0.1), SchemaError);
    CHECK_THROWS_AS(binary_entropy(1.1), SchemaError);
}

TEST_CASE("ball_count: exact sums and entropy bound") {
    BallCount b = ball_count(10, 5);
    CHECK(b.exact == 638);
    CHECK(b.bound == doctest::Approx(1024.0).epsilon(1e-9));
    CHECK(ball_count(7, 0).exact == 1);
    CHECK(ball_count(7, 0).bound == 1.0);
    CHECK(ball_count(6, 6).exact == 64);

    for (int n = 1; n <= 16; ++n)
        for (int k = 0; k <= n / 2; ++k) {
            BallCount c = ball_count(n, k);
            CHECK(c.exact.convert_to<double>() <= c.bound * (1 + 1e-12));
        }
    CHECK_THROWS_AS(ball_count(4, 5), SchemaError);
}

TEST_CASE("eta_for: paper constants and certificate") {
    // E = N: eta = 1/(16 log2 8) = 1/48
    CHECK(eta_for(100, 100) == doctest::Approx(1.0 / 48).epsilon(1e-12));
    double eta = eta_for(100, 100);
    CHECK(2 * eta * std::log2(1 / eta) < 0.25);
    // E = n/2 at n = 64: 32/(16*64*log2(16)) = 1/128
    CHECK(eta_for(32, 64) == doctest::Approx(1.0 / 128).epsilon(1e-12));
    CHECK_THROWS_AS(eta_for(0, 10), SchemaError);
    CHECK_THROWS_AS(eta_for(11, 10), SchemaError);

    for (std::int64_t n = 1; n <= 1000000; n = n * 3 + 1)
        for (std::int64_t e = 1; e <= n; e = e * 2 + 1) {
            double h = eta_for(std::min(e, n), n);
            CHECK(h > 0.0);
            CHECK(h < 0.5);
        }
}

TEST_CASE("small_ball_bound: formula and Monte Carlo soundness") {
    CHECK(small_ball_bound(3, 1.0) == doctest::Approx(0.25 / std::sqrt(2 * M_PI)).epsilon(1e-12));
    CHECK_THROWS_AS(small_ball_bound(3, 0.0), SchemaError);

    // decreasing in E and in sigma^2
    for (int e = 1; e < 10; ++e)
        CHECK(small_ball_bound(e + 1, 1.0) < small_ball_bound(e, 1.0));
    for (double s2 : {0.25, 1.0, 4.0})
        CHECK(small_ball_bound(5, s2 * 2) < small_ball_bound(5, s2));

    Rng rng(12);
    for (double s2 : {0.25, 1.0, 4.0}) {
        const int samples = 100000;
        double mu = 0.3;
        std::vector<int> hits(11, 0);
        for (int i = 0; i < samples; ++i) {
            double z = mu + std::sqrt(s2) * rng.next_gaussian();
            for (int e = 1; e <= 10; ++e)
                if (std::abs(z) <= std::exp2(-e)) ++hits[e];
        }
        for (int e = 1; e <= 10; ++e) {
            double p = hits[e] / double(samples);
            double bound = small_ball_bound(e, s2);
            CHECK(p <= bound + 4 * std::sqrt(std::max(p, 1.0 / samples) / samples));
        }
    }
}

TEST_CASE("nearest_solution_flips: fixtures") {
    EnergyLevel lvl(10);  // threshold below one unit at B=20
    Instance g = units({1, 2, 3, 4});
    CHECK(nearest_solution_flips(g, lvl, sv("++++"), 4) == 2);
    CHECK(nearest_solution_flips(g, lvl, sv("+--+"), 4) == 0);
    CHECK(nearest_solution_flips(g, lvl, sv("++++"), 1) == std::nullopt);

    Instance odd = units({1, 2, 4});
    CHECK(nearest_solution_flips(odd, lvl, sv("+++"), 3) == std::nullopt);
    CHECK(nearest_solution_flips(odd, lvl, sv("-+-"), 3) == std::nullopt);
}

TEST_CASE("obstruction params: resolution and validation") {
    ObstructionParams p;
    p.n = 24;
    p.scale_bits = 40;
    p.energy = 12;
    p.eps = 0.25;
    p.trials = 10;
    p.resolve();
    CHECK(p.eta == doctest::Approx(eta_for(12, 24)));
    CHECK(p.ball_flips == int(p.eta * 24));

    ObstructionParams bad = p;
    bad.energy = 35;  // margin violation at B=40
    CHECK_THROWS_AS(bad.resolve(), SchemaError);
    bad = p;
    bad.solver = "nope";
    CHECK_THROWS_AS(bad.resolve(), SchemaError);
}

TEST_CASE("obstruction_trial: eps 0 resampled never differs") {
    ObstructionParams p;
    p.n = 12;
    p.scale_bits = 40;
    p.energy = 4;
    p.eps = 0.0;
    p.eta = 0.3;
    p.trials = 20;
    p.seed = 5;
    p.resolve();
    for (std::uint64_t t = 0; t < 20; ++t) {
        TrialRecord rec = obstruction_trial(p, t);
        CHECK(!rec.s_diff);
        // g' = g, so x solves g' iff it solves g; a solved instance puts a
        // solution at distance zero
        if (rec.s_solve_g) {
            CHECK(rec.nearest_flips == 0);
            CHECK(!rec.s_cond);
        }
        CHECK(rec.s_stable);  // identical outputs
    }
}

TEST_CASE("obstruction_trial: record consistency at eps 0.25") {
    ObstructionParams p;
    p.n = 14;
    p.scale_bits = 40;
    p.energy = 6;
    p.eps = 0.25;
    p.eta = 0.2;
    p.trials = 50;
    p.seed = 77;
    p.resolve();
    CHECK(p.ball_flips == 2);
    for (std::uint64_t t = 0; t < 50; ++t) {
        TrialRecord rec = obstruction_trial(p, t);
        CHECK(rec.s_cond == !rec.nearest_flips.has_value());
        if (rec.nearest_flips) CHECK(*rec.nearest_flips <= p.ball_flips);
        // determinism in (seed, trial)
        TrialRecord again = obstruction_trial(p, t);
        CHECK(again.s_diff == rec.s_diff);
        CHECK(again.s_stable == rec.s_stable);
        CHECK(again.nearest_flips == rec.nearest_flips);
    }
}

TEST_CASE("repel_trial: fixtures") {
    EnergyLevel lvl(10);
    CHECK(!repel_trial(units({1, 1, 2, 4}), lvl, 2));  // solutions only antipodal
    CHECK(repel_trial(units({1, 1, 2, 4}), lvl, 4));   // the antipodal pair
    for (int k = 1; k <= 3; ++k) CHECK(!repel_trial(units({1, 2, 4}), lvl, k));
    // two distinct solution pairs one flip apart: 0 entry makes both signs solve
    CHECK(repel_trial(units({0, 1, 1}), lvl, 1));
    CHECK_THROWS_AS(repel_trial(units({1, 2, 4}), lvl, 0), SchemaError);
}

TEST_CASE("repel_trial: exhaustive oracle on random instances") {
    for (int t = 0; t < 120; ++t) {
        int n = 3 + t % 8;
        Instance g = sample_instance(n, Dist::gaussian, 40, 200000 + t);
        EnergyLevel lvl(5 + t % 10);
        int k = 1 + t % n;
        // oracle: enumerate all sign vectors, collect solutions, scan pairs
        std::vector<std::uint64_t> sols;
        Wide thr = threshold_q(g, lvl);
        for (std::uint64_t m = 0; m < (1ull << n); ++m) {
            SignVector x(n, false);
            for (int i = 0; i < n; ++i) x.set(i, m >> i & 1);
            if (boost::multiprecision::abs(inner(g, x)) <= thr) sols.push_back(m);
        }
        bool expect = false;
        for (size_t a = 0; a < sols.size() && !expect; ++a)
            for (size_t b = a + 1; b < sols.size(); ++b) {
                int h = std::popcount(sols[a] ^ sols[b]);
                if (h <= k) { expect = true; break; }
            }
        CHECK(repel_trial(g, lvl, k) == expect);
    }
}

TEST_CASE("rounding_hardness_trial: corner-valued algorithms") {
    JuntaAlgorithm sign1 = JuntaAlgorithm::sign_product_blocks(10, 1);
    for (int t = 0; t < 30; ++t) {
        Instance g = sample_instance(10, Dist::gaussian, 40, 404040 + t);
        RoundingTrialRecord rec = rounding_hardness_trial(sign1, g, EnergyLevel(6), 1.0,
                                                          derive_seed(3, t, 0));
        CHECK(rec.resampled == 0);  // outputs are already in Sigma_N
        // tilde output equals sign(A(g)) with no resampling
        SignVector expect = round_deterministic(eval_junta(sign1, g));
        CHECK(rec.tilde_solves == is_solution(g, expect, EnergyLevel(6)));
    }
}

TEST_CASE("rounding_hardness_trial: full-ball radius recovers the optimum") {
    JuntaAlgorithm sign2 = JuntaAlgorithm::sign_product_blocks(10, 2);
    double r = 2.0 * std::sqrt(10.0) + 1.0;
    for (int t = 0; t < 20; ++t) {
        Instance g = sample_instance(10, Dist::gaussian, 40, 505050 + t);
        RoundingTrialRecord rec =
            rounding_hardness_trial(sign2, g, EnergyLevel(6), r, derive_seed(4, t, 0));
        CHECK(!rec.hat_interior);
        CHECK(rec.hat_solves == (brute_force(g).energy >= 6.0));
    }
}

TEST_CASE("wilson_estimate") {
    EstimateCI zero = wilson_estimate(0, 100);
    CHECK(zero.point == 0.0);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi == doctest::Approx(0.0370).epsilon(2e-3));

    EstimateCI full = wilson_estimate(100, 100);
    CHECK(full.point == 1.0);
    CHECK(full.hi == 1.0);
    CHECK(full.lo == doctest::Approx(1.0 - zero.hi).epsilon(1e-12));

    EstimateCI half = wilson_estimate(50, 100);
    CHECK(half.point == 0.5);
    CHECK(half.hi - 0.5 == doctest::Approx(0.5 - half.lo).epsilon(1e-12));

    for (std::uint64_t s : {0ull, 3ull, 40ull, 99ull, 100ull}) {
        EstimateCI ci = wilson_estimate(s, 100);
        CHECK(ci.lo >= 0.0);
        CHECK(ci.lo <= ci.point);
        CHECK(ci.point <= ci.hi);
        CHECK(ci.hi <= 1.0);
    }
    CHECK_THROWS_AS(wilson_estimate(1, 0), SchemaError);
    CHECK_THROWS_AS(wilson_estimate(5, 4), InternalError);
}

TEST_CASE("aggregate: conditional Wilson estimates") {
    std::vector<TrialRecord> recs(10);
    for (int i = 0; i < 10; ++i) {
        recs[i].s_diff = i < 8;          // 8 conditioning trials
        recs[i].s_cond = i % 2 == 0;     // 4 of those have the event
    }
    EstimateCI ci = aggregate(
        recs, [](const TrialRecord& r) { return !r.s_cond; },
        [](const TrialRecord& r) { return r.s_diff; });
    CHECK(ci.trials == 8);
    CHECK(ci.successes == 4);
    CHECK(ci.point == 0.5);

    CHECK_THROWS_AS(aggregate(recs, [](const TrialRecord&) { return true; },
                              [](const TrialRecord&) { return false; }),
                    SchemaError);
}

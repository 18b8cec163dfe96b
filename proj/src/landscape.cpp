#include "npplab/landscape.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace npplab {

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw SchemaError("binary_entropy domain is [0, 1]");
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

BallCount ball_count(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw SchemaError("ball_count requires 0 <= k <= n");
    BallCount out;
    out.exact = 0;
    BigInt binom = 1;
    for (int j = 0; j <= k; ++j) {
        out.exact += binom;
        binom = binom * (n - j) / (j + 1);
    }
    double p = n == 0 ? 0.0 : static_cast<double>(k) / n;
    out.bound = std::exp2(n * binary_entropy(p));
    out.weak_bound = p > 0.0 ? std::exp2(2.0 * n * p * std::log2(1.0 / p)) : 1.0;
    return out;
}

double eta_for(std::int64_t e, std::int64_t n) {
    if (e < 1 || e > n) throw SchemaError("eta_for requires 1 <= E <= N");
    const double c = 8.0, c_prime = 16.0;
    double eta = static_cast<double>(e) / (c_prime * n * std::log2(c * n / static_cast<double>(e)));
    if (!(eta > 0.0 && eta < 0.5))
        throw InternalError("eta certificate failed: eta out of (0, 1/2)");
    if (!(2.0 * eta * std::log2(1.0 / eta) < static_cast<double>(e) / (4.0 * n)))
        throw InternalError("eta certificate failed: entropy inequality");
    return eta;
}

double small_ball_bound(double e, double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw SchemaError("small_ball_bound requires positive variance");
    return std::exp2(1.0 - e) / std::sqrt(2.0 * M_PI * sigma_sq);
}

std::optional<int> nearest_solution_flips(const Instance& g, EnergyLevel lvl,
                                          const SignVector& x, int k_max) {
    Wide t = threshold_q(g, lvl);
    int n = g.n;
    k_max = std::min(k_max, n);
    // Work estimate: sum of binomials up to k_max.
    BigInt work = ball_count(n, k_max).exact;
    if (k_max > 8 && work > caps().ball_work)
        throw CapError("nearest_solution_flips work cap exceeded");

    Wide s0 = inner(g, x);
    if (boost::multiprecision::abs(s0) <= t) return 0;
    // Flipping coordinate i changes the sum by -2 x_i q_i.
    std::vector<Wide> delta(n);
    for (int i = 0; i < n; ++i)
        delta[i] = x.is_plus(i) ? Wide(-2 * g.values[i]) : Wide(2 * g.values[i]);

    bool found = false;
    auto scan = [&](auto&& self, int start, int remaining, const Wide& s) -> void {
        if (found) return;
        if (remaining == 0) {
            if (boost::multiprecision::abs(s) <= t) found = true;
            return;
        }
        for (int i = start; i <= n - remaining && !found; ++i)
            self(self, i + 1, remaining - 1, s + delta[i]);
    };
    for (int k = 1; k <= k_max; ++k) {
        scan(scan, 0, k, s0);
        if (found) return k;
    }
    return std::nullopt;
}

void ObstructionParams::resolve() {
    if (n < 1) throw SchemaError("obstruction requires n >= 1");
    if (energy + kEnergyMarginBits > scale_bits)
        throw SchemaError("obstruction requires E + 10 <= scale_bits");
    if (!valid_solver_name(solver)) throw SchemaError("unknown solver name '" + solver + "'");
    if (eta == 0.0) eta = eta_for(energy, n);
    if (!(eta > 0.0 && eta < 0.5)) throw SchemaError("eta must lie in (0, 1/2)");
    if (ball_flips < 0) ball_flips = static_cast<int>(eta * n);
    if (trials < 1) throw SchemaError("obstruction requires trials >= 1");
}

TrialRecord obstruction_trial(const ObstructionParams& p, std::uint64_t trial_index) {
    auto t0 = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial = trial_index;

    Instance g = sample_instance(p.n, p.dist, p.scale_bits,
                                 derive_seed(p.seed, trial_index, StreamPurpose::instance));
    SolveResult rg = solve_by_name(p.solver, g);

    std::uint64_t pair_seed = derive_seed(p.seed, trial_index, StreamPurpose::pair_fresh);
    PairSample pair = p.mode == PairMode::correlated ? correlated_pair(g, p.eps, pair_seed)
                                                     : resampled_pair(g, p.eps, pair_seed);
    SolveResult rgp = solve_by_name(p.solver, pair.g_prime);

    EnergyLevel lvl(p.energy);
    rec.s_diff = !g.same_values(pair.g_prime);
    rec.s_solve_g = is_solution(g, rg.x, lvl);
    rec.s_solve_gp = is_solution(pair.g_prime, rgp.x, lvl);
    rec.s_stable = rg.x.hamming(rgp.x) <= p.ball_flips;
    rec.nearest_flips = nearest_solution_flips(pair.g_prime, lvl, rg.x, p.ball_flips);
    rec.s_cond = !rec.nearest_flips.has_value();
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

bool repel_trial(const Instance& g, EnergyLevel lvl, int k) {
    if (k < 1) throw SchemaError("repel_trial requires k >= 1");
    int n = g.n;
    if (n > caps().mitm_max_n) throw CapError("repel_trial cap exceeded");
    Wide t = threshold_q(g, lvl);

    // Prefilter: a close pair forces a nonempty J, |J| <= k, and signs
    // with |<g_J, x_J>| <= threshold.  Absent that, no pair can exist.
    bool candidate = n <= k;  // antipodal pair is only k-close when n <= k
    auto scan = [&](auto&& self, int start, int remaining, const Wide& s) -> void {
        if (candidate) return;
        if (boost::multiprecision::abs(s) <= t) { candidate = true; return; }
        if (remaining == 0) return;
        for (int i = start; i < n && !candidate; ++i) {
            self(self, i + 1, remaining - 1, s + g.values[i]);
            self(self, i + 1, remaining - 1, s - g.values[i]);
        }
    };
    // First chosen coordinate takes + (antipodal sign choices are equivalent).
    for (int i = 0; i < n && !candidate; ++i)
        scan(scan, i + 1, std::min(k, n) - 1, g.values[i]);
    if (!candidate) return false;

    // Exact decision: enumerate S(E; g) (canonical half) and compare all
    // pairs, accounting for antipodes.
    std::vector<SignVector> sols = list_solutions_mitm(g, lvl, caps().ball_work);
    size_t m = sols.size();
    if (m == 0) return false;
    if (n <= k && m >= 1) return true;  // x and -x are within k flips
    std::vector<std::uint64_t> masks(m);
    for (size_t i = 0; i < m; ++i) masks[i] = sols[i].bits[0];
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            int h = std::popcount(masks[i] ^ masks[j]);
            if (h <= k || n - h <= k) return true;
        }
    }
    return false;
}

RoundingTrialRecord rounding_hardness_trial(const JuntaAlgorithm& a, const Instance& g,
                                            EnergyLevel lvl, double r, std::uint64_t seed) {
    RoundingTrialRecord rec;
    std::vector<double> y = eval_junta(a, g);
    ResampleRound rr = round_via_resampling(clip(y), seed);
    rec.resampled = rr.resampled;
    rec.tilde_solves = is_solution(g, rr.x, lvl);
    LocalImproveResult li = local_improve(g, y, r);
    rec.hat_interior = li.interior;
    rec.hat_solves = !li.interior && is_solution(g, li.res.x, lvl);
    return rec;
}

EstimateCI wilson_estimate(std::uint64_t successes, std::uint64_t trials) {
    if (trials < 1) throw SchemaError("wilson_estimate requires trials >= 1");
    if (successes > trials) throw InternalError("successes exceed trials");
    const double z = 1.959963984540054;  // 95%
    double nd = static_cast<double>(trials);
    double p = static_cast<double>(successes) / nd;
    double z2 = z * z;
    double denom = 1.0 + z2 / nd;
    double center = (p + z2 / (2.0 * nd)) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd)) / denom;
    EstimateCI ci;
    ci.successes = successes;
    ci.trials = trials;
    ci.point = p;
    // center - half is exactly 0 at p = 0 (and symmetrically 1 at p = 1);
    // pin those so rounding noise cannot leak in.
    ci.lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
    ci.hi = successes == trials ? 1.0 : std::min(1.0, center + half);
    return ci;
}

EstimateCI aggregate(const std::vector<TrialRecord>& records, const TrialSelector& event,
                     const TrialSelector& condition) {
    std::uint64_t trials = 0, successes = 0;
    for (const auto& r : records) {
        if (!condition(r)) continue;
        ++trials;
        if (event(r)) ++successes;
    }
    if (trials == 0) throw SchemaError("aggregate: empty conditional sample");
    return wilson_estimate(successes, trials);
}

}  // namespace npplab

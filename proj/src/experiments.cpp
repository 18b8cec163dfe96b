#include "npplab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <mutex>
#include <set>
#include <thread>

#include "npplab/io.hpp"

namespace npplab {

using nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw SchemaError("config field '" + field + "': " + why);
}

const json& require(const json& cfg, const std::string& field) {
    auto it = cfg.find(field);
    if (it == cfg.end()) bad_field(field, "missing");
    return *it;
}

std::int64_t get_int(const json& cfg, const std::string& field, std::int64_t lo, std::int64_t hi) {
    const json& v = require(cfg, field);
    if (!v.is_number_integer()) bad_field(field, "must be an integer");
    std::int64_t x = v.get<std::int64_t>();
    if (x < lo || x > hi)
        bad_field(field, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

std::int64_t get_int_default(const json& cfg, const std::string& field, std::int64_t dflt,
                             std::int64_t lo, std::int64_t hi) {
    if (!cfg.contains(field)) return dflt;
    return get_int(cfg, field, lo, hi);
}

std::uint64_t get_seed(const json& cfg) {
    if (!cfg.contains("seed")) return 0;
    const json& v = cfg.at("seed");
    if (!v.is_number_unsigned() && !v.is_number_integer()) bad_field("seed", "must be an integer");
    if (v.is_number_integer() && v.get<std::int64_t>() < 0) bad_field("seed", "must be nonnegative");
    return v.get<std::uint64_t>();
}

double get_double(const json& cfg, const std::string& field, double lo, double hi) {
    const json& v = require(cfg, field);
    if (!v.is_number()) bad_field(field, "must be a number");
    double x = v.get<double>();
    if (!(x >= lo && x <= hi))
        bad_field(field, "must lie in [" + format_double(lo) + ", " + format_double(hi) + "]");
    return x;
}

std::string get_string(const json& cfg, const std::string& field) {
    const json& v = require(cfg, field);
    if (!v.is_string()) bad_field(field, "must be a string");
    return v.get<std::string>();
}

std::string get_dist(const json& cfg) {
    std::string s = cfg.contains("dist") ? get_string(cfg, "dist") : "gaussian";
    try {
        dist_from_name(s);
    } catch (const std::exception&) {
        bad_field("dist", "must be gaussian or uniform_pm1");
    }
    return s;
}

std::string get_mode(const json& cfg) {
    std::string s = cfg.contains("mode") ? get_string(cfg, "mode") : "resampled";
    if (s != "correlated" && s != "resampled") bad_field("mode", "must be correlated or resampled");
    return s;
}

// eps: a number in (0, 1], or "ldp" (2^(-E/2)) or "lcd" (log2(n/D)/n).
double resolve_eps(const json& cfg, std::int64_t n, std::int64_t energy, std::int64_t degree) {
    const json& v = require(cfg, "eps");
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s == "ldp") {
            if (energy < 1) bad_field("eps", "preset ldp needs an energy field");
            return std::exp2(-static_cast<double>(energy) / 2.0);
        }
        if (s == "lcd") {
            if (n <= degree) bad_field("eps", "preset lcd needs n > degree");
            return std::log2(static_cast<double>(n) / degree) / n;
        }
        bad_field("eps", "must be a number, \"ldp\", or \"lcd\"");
    }
    if (!v.is_number()) bad_field("eps", "must be a number, \"ldp\", or \"lcd\"");
    double e = v.get<double>();
    if (!(e > 0.0 && e <= 1.0)) bad_field("eps", "must lie in (0, 1]");
    return e;
}

double resolve_eta(const json& cfg, std::int64_t energy, std::int64_t n) {
    if (!cfg.contains("eta") || (cfg.at("eta").is_string() && cfg.at("eta") == "auto")) {
        if (energy > n) bad_field("eta", "\"auto\" needs energy <= n");
        return eta_for(energy, n);
    }
    const json& v = cfg.at("eta");
    if (!v.is_number()) bad_field("eta", "must be a number or \"auto\"");
    double eta = v.get<double>();
    if (!(eta > 0.0 && eta < 0.5)) bad_field("eta", "must lie in (0, 1/2)");
    return eta;
}

void reject_unknown(const json& cfg, const std::set<std::string>& allowed) {
    for (auto it = cfg.begin(); it != cfg.end(); ++it)
        if (!allowed.count(it.key())) bad_field(it.key(), "unknown field");
}

std::string iso_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t m = v.size();
    if (m == 0) return std::nan("");
    return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

// Possibly-infinite reals go into JSON as strings ("inf"/"-inf" included).
json real_field(double v) { return format_double(v); }

ObstructionParams obstruction_params(const json& r) {
    ObstructionParams p;
    p.n = static_cast<int>(r.at("n").get<std::int64_t>());
    p.scale_bits = static_cast<int>(r.at("scale_bits").get<std::int64_t>());
    p.dist = dist_from_name(r.at("dist").get<std::string>());
    p.energy = static_cast<int>(r.at("energy").get<std::int64_t>());
    p.eps = r.at("eps").get<double>();
    p.eta = r.at("eta").get<double>();
    p.mode = pair_mode_from_name(r.at("mode").get<std::string>());
    p.solver = r.at("solver").get<std::string>();
    p.ball_flips = static_cast<int>(r.at("ball_flips").get<std::int64_t>());
    p.trials = r.at("trials").get<std::uint64_t>();
    p.seed = r.at("seed").get<std::uint64_t>();
    p.resolve();
    return p;
}

}  // namespace

json resolve_config(const json& config) {
    if (!config.is_object()) throw SchemaError("config must be a JSON object");
    std::string exp = get_string(config, "experiment");
    json r;
    r["experiment"] = exp;
    r["seed"] = get_seed(config);
    r["trials"] = get_int(config, "trials", 1, 100000000);
    std::int64_t b = get_int_default(config, "scale_bits", 128, 16, 192);
    r["scale_bits"] = b;
    r["dist"] = get_dist(config);

    if (exp == "obstruction") {
        reject_unknown(config, {"experiment", "seed", "trials", "scale_bits", "dist", "n", "energy",
                                "eps", "eta", "mode", "solver", "degree", "ball_flips"});
        std::int64_t n = get_int(config, "n", 1, 1000000);
        std::int64_t e = get_int(config, "energy", 1, b - kEnergyMarginBits);
        std::int64_t d = get_int_default(config, "degree", 1, 1, n);
        r["n"] = n;
        r["energy"] = e;
        r["eps"] = resolve_eps(config, n, e, d);
        double eta = resolve_eta(config, e, n);
        r["eta"] = eta;
        r["mode"] = get_mode(config);
        std::string solver = config.contains("solver") ? get_string(config, "solver") : "bf";
        if (!valid_solver_name(solver)) bad_field("solver", "unknown solver '" + solver + "'");
        r["solver"] = solver;
        r["ball_flips"] = get_int_default(config, "ball_flips", static_cast<std::int64_t>(eta * n),
                                          0, n);
    } else if (exp == "repel") {
        reject_unknown(config, {"experiment", "seed", "trials", "scale_bits", "dist", "n",
                                "energy", "k"});
        std::int64_t n = get_int(config, "n", 1, 64);
        r["n"] = n;
        r["energy"] = get_int(config, "energy", 1, b - kEnergyMarginBits);
        r["k"] = get_int(config, "k", 1, n);
    } else if (exp == "stability") {
        reject_unknown(config, {"experiment", "seed", "trials", "scale_bits", "dist", "n",
                                "degree", "eps", "mode", "energy"});
        std::int64_t n = get_int(config, "n", 1, 1000000);
        std::int64_t d = get_int(config, "degree", 1, n);
        std::int64_t e = get_int_default(config, "energy", 0, 0, b - kEnergyMarginBits);
        r["n"] = n;
        r["degree"] = d;
        r["eps"] = resolve_eps(config, n, e, d);
        r["mode"] = get_mode(config);
    } else if (exp == "rounding") {
        reject_unknown(config, {"experiment", "seed", "trials", "scale_bits", "dist", "n",
                                "energy", "degree", "r"});
        std::int64_t n = get_int(config, "n", 1, 64);
        r["n"] = n;
        r["energy"] = get_int(config, "energy", 1, b - kEnergyMarginBits);
        r["degree"] = get_int(config, "degree", 1, n);
        r["r"] = get_double(config, "r", 1e-9, 1e9);
    } else if (exp == "scaling") {
        reject_unknown(config, {"experiment", "seed", "trials", "scale_bits", "dist", "n",
                                "solver"});
        const json& ns = require(config, "n");
        if (!ns.is_array() || ns.empty()) bad_field("n", "must be a nonempty array of sizes");
        for (const auto& v : ns)
            if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || v.get<std::int64_t>() > 64)
                bad_field("n", "entries must be integers in [1, 64]");
        r["n"] = ns;
        std::string solver = config.contains("solver") ? get_string(config, "solver") : "mitm";
        if (!valid_solver_name(solver)) bad_field("solver", "unknown solver '" + solver + "'");
        r["solver"] = solver;
    } else {
        bad_field("experiment",
                  "must be obstruction, repel, stability, rounding, or scaling");
    }
    return r;
}

void parallel_for(std::uint64_t count, int workers, const std::function<void(std::uint64_t)>& fn) {
    if (workers < 1) workers = 1;
    if (workers == 1 || count < 2) {
        for (std::uint64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto body = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int nthreads = static_cast<int>(std::min<std::uint64_t>(workers, count));
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

json estimate_to_json(const EstimateCI& ci) {
    return json{{"successes", ci.successes},
                {"trials", ci.trials},
                {"point", ci.point},
                {"lo", ci.lo},
                {"hi", ci.hi}};
}

namespace {

Csv run_obstruction(const json& r, int workers) {
    ObstructionParams p = obstruction_params(r);
    Csv csv;
    csv.header = {"trial", "s_diff", "s_solve_g", "s_solve_gp",
                  "s_stable", "s_cond", "nearest_flips", "elapsed_ms"};
    csv.rows.resize(p.trials);
    parallel_for(p.trials, workers, [&](std::uint64_t t) {
        TrialRecord rec = obstruction_trial(p, t);
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", rec.elapsed_ms);
        csv.rows[t] = {std::to_string(rec.trial),
                       rec.s_diff ? "1" : "0",
                       rec.s_solve_g ? "1" : "0",
                       rec.s_solve_gp ? "1" : "0",
                       rec.s_stable ? "1" : "0",
                       rec.s_cond ? "1" : "0",
                       rec.nearest_flips ? std::to_string(*rec.nearest_flips) : "",
                       ms};
    });
    return csv;
}

Csv run_repel(const json& r, int workers) {
    int n = r.at("n").get<int>();
    int b = r.at("scale_bits").get<int>();
    Dist dist = dist_from_name(r.at("dist").get<std::string>());
    EnergyLevel lvl(r.at("energy").get<int>());
    int k = r.at("k").get<int>();
    std::uint64_t trials = r.at("trials").get<std::uint64_t>();
    std::uint64_t seed = r.at("seed").get<std::uint64_t>();
    Csv csv;
    csv.header = {"trial", "pair_within_k"};
    csv.rows.resize(trials);
    parallel_for(trials, workers, [&](std::uint64_t t) {
        Instance g = sample_instance(n, dist, b, derive_seed(seed, t, StreamPurpose::instance));
        csv.rows[t] = {std::to_string(t), repel_trial(g, lvl, k) ? "1" : "0"};
    });
    return csv;
}

Csv run_stability(const json& r, int workers) {
    int n = r.at("n").get<int>();
    int d = r.at("degree").get<int>();
    int b = r.at("scale_bits").get<int>();
    Dist dist = dist_from_name(r.at("dist").get<std::string>());
    double eps = r.at("eps").get<double>();
    PairMode mode = pair_mode_from_name(r.at("mode").get<std::string>());
    std::uint64_t trials = r.at("trials").get<std::uint64_t>();
    std::uint64_t seed = r.at("seed").get<std::uint64_t>();
    JuntaAlgorithm a = JuntaAlgorithm::sign_product_blocks(n, d);
    Csv csv;
    csv.header = {"trial", "sq_dist", "inner", "norm_sq"};
    csv.rows.resize(trials);
    parallel_for(trials, workers, [&](std::uint64_t t) {
        StabilityTrial s =
            stability_trial(a, dist, b, eps, mode, derive_seed(seed, t, StreamPurpose::trial));
        csv.rows[t] = {std::to_string(t), format_double(s.sq_dist), format_double(s.inner),
                       format_double(s.norm_sq)};
    });
    return csv;
}

Csv run_rounding(const json& r, int workers) {
    int n = r.at("n").get<int>();
    int b = r.at("scale_bits").get<int>();
    Dist dist = dist_from_name(r.at("dist").get<std::string>());
    EnergyLevel lvl(r.at("energy").get<int>());
    int d = r.at("degree").get<int>();
    double radius = r.at("r").get<double>();
    std::uint64_t trials = r.at("trials").get<std::uint64_t>();
    std::uint64_t seed = r.at("seed").get<std::uint64_t>();
    JuntaAlgorithm a = JuntaAlgorithm::sign_product_blocks(n, d);
    Csv csv;
    csv.header = {"trial", "tilde_solves", "hat_solves", "hat_interior", "resampled"};
    csv.rows.resize(trials);
    parallel_for(trials, workers, [&](std::uint64_t t) {
        Instance g = sample_instance(n, dist, b, derive_seed(seed, t, StreamPurpose::instance));
        RoundingTrialRecord rec = rounding_hardness_trial(
            a, g, lvl, radius, derive_seed(seed, t, StreamPurpose::rounding));
        csv.rows[t] = {std::to_string(t), rec.tilde_solves ? "1" : "0",
                       rec.hat_solves ? "1" : "0", rec.hat_interior ? "1" : "0",
                       std::to_string(rec.resampled)};
    });
    return csv;
}

Csv run_scaling(const json& r, int workers) {
    std::vector<int> sizes = r.at("n").get<std::vector<int>>();
    int b = r.at("scale_bits").get<int>();
    Dist dist = dist_from_name(r.at("dist").get<std::string>());
    std::string solver = r.at("solver").get<std::string>();
    std::uint64_t trials = r.at("trials").get<std::uint64_t>();
    std::uint64_t seed = r.at("seed").get<std::uint64_t>();
    Csv csv;
    csv.header = {"n", "trial", "disc_q", "energy", "work"};
    std::uint64_t total = sizes.size() * trials;
    csv.rows.resize(total);
    parallel_for(total, workers, [&](std::uint64_t idx) {
        int n = sizes[idx / trials];
        std::uint64_t t = idx % trials;
        Instance g = sample_instance(n, dist, b, derive_seed(seed, idx, StreamPurpose::instance));
        SolveResult res = solve_by_name(solver, g);
        csv.rows[idx] = {std::to_string(n), std::to_string(t), wide_to_hex(res.disc_q),
                         format_double(res.energy), std::to_string(res.work)};
    });
    return csv;
}

bool cell_bool(const std::string& s) { return s == "1"; }

json summarize_obstruction(const json& r, const Csv& csv) {
    std::vector<TrialRecord> recs;
    int ci_trial = csv.column("trial"), ci_diff = csv.column("s_diff"),
        ci_sg = csv.column("s_solve_g"), ci_sgp = csv.column("s_solve_gp"),
        ci_st = csv.column("s_stable"), ci_sc = csv.column("s_cond"),
        ci_nf = csv.column("nearest_flips");
    if (ci_diff < 0 || ci_sc < 0) throw SchemaError("obstruction CSV missing event columns");
    for (const auto& row : csv.rows) {
        TrialRecord rec;
        rec.trial = std::stoull(row[ci_trial]);
        rec.s_diff = cell_bool(row[ci_diff]);
        rec.s_solve_g = cell_bool(row[ci_sg]);
        rec.s_solve_gp = cell_bool(row[ci_sgp]);
        rec.s_stable = cell_bool(row[ci_st]);
        rec.s_cond = cell_bool(row[ci_sc]);
        if (!row[ci_nf].empty()) rec.nearest_flips = std::stoi(row[ci_nf]);
        recs.push_back(rec);
    }
    json out{{"experiment", "obstruction"}, {"trials", recs.size()}};
    auto maybe = [&](const TrialSelector& ev, const TrialSelector& cond) -> json {
        for (const auto& rec : recs)
            if (cond(rec)) return estimate_to_json(aggregate(recs, ev, cond));
        return nullptr;
    };
    auto always = [](const TrialRecord&) { return true; };
    json p_not_cond =
        maybe([](const TrialRecord& t) { return !t.s_cond; },
              [](const TrialRecord& t) { return t.s_diff; });
    out["p_not_cond_given_diff"] = p_not_cond;
    out["p_unstable_given_diff"] =
        maybe([](const TrialRecord& t) { return !t.s_stable; },
              [](const TrialRecord& t) { return t.s_diff; });
    out["p_solve_g"] = maybe([](const TrialRecord& t) { return t.s_solve_g; }, always);
    out["p_solve_gp"] = maybe([](const TrialRecord& t) { return t.s_solve_gp; }, always);

    double e = r.at("energy").get<double>();
    double n = r.at("n").get<double>();
    double eta = r.at("eta").get<double>();
    double bound_log2 = -e + 2.0 * eta * std::log2(1.0 / eta) * n;
    out["bound_log2_leading"] = bound_log2;
    if (!p_not_cond.is_null()) {
        double p = p_not_cond.at("point").get<double>();
        out["measured_c"] = real_field(std::log2(p) - bound_log2);
    } else {
        out["measured_c"] = nullptr;
    }
    return out;
}

json summarize_repel(const json& r, const Csv& csv) {
    int col = csv.column("pair_within_k");
    if (col < 0) throw SchemaError("repel CSV missing pair_within_k");
    std::uint64_t hits = 0;
    for (const auto& row : csv.rows) hits += cell_bool(row[col]);
    EstimateCI ci = wilson_estimate(hits, csv.rows.size());
    double e = r.at("energy").get<double>();
    double k = r.at("k").get<double>();
    double n = r.at("n").get<double>();
    json out{{"experiment", "repel"},
             {"p_pair_within_k", estimate_to_json(ci)},
             {"bound_log2_leading", -e}};
    out["measured_c"] =
        real_field(ci.point > 0 ? (std::log2(ci.point) + e) / (k * std::log2(n))
                                : -std::numeric_limits<double>::infinity());
    return out;
}

json summarize_stability(const json& r, const Csv& csv) {
    int ci_sq = csv.column("sq_dist"), ci_in = csv.column("inner"), ci_no = csv.column("norm_sq");
    if (ci_sq < 0 || ci_in < 0) throw SchemaError("stability CSV missing columns");
    double sq = 0, in = 0, no = 0;
    for (const auto& row : csv.rows) {
        sq += std::stod(row[ci_sq]);
        in += std::stod(row[ci_in]);
        no += std::stod(row[ci_no]);
    }
    double m = static_cast<double>(csv.rows.size());
    double n = r.at("n").get<double>();
    double d = r.at("degree").get<double>();
    double eps = r.at("eps").get<double>();
    return json{{"experiment", "stability"},
                {"trials", csv.rows.size()},
                {"mean_sq_dist", sq / m},
                {"mean_inner", in / m},
                {"mean_norm_sq", no / m},
                {"expected_inner_resampled", n * std::pow(1.0 - eps, d)},
                {"sq_dist_bound", stability_bound(1.0, static_cast<int>(d), eps,
                                                  static_cast<int>(n))}};
}

json summarize_rounding(const json&, const Csv& csv) {
    int ci_t = csv.column("tilde_solves"), ci_h = csv.column("hat_solves"),
        ci_i = csv.column("hat_interior"), ci_r = csv.column("resampled");
    if (ci_t < 0 || ci_h < 0) throw SchemaError("rounding CSV missing columns");
    std::uint64_t tilde = 0, hat = 0, interior = 0, gap = 0;
    double resampled = 0;
    for (const auto& row : csv.rows) {
        bool ts = cell_bool(row[ci_t]), hs = cell_bool(row[ci_h]);
        tilde += ts;
        hat += hs;
        interior += cell_bool(row[ci_i]);
        gap += ts && !hs;
        resampled += std::stod(row[ci_r]);
    }
    std::uint64_t m = csv.rows.size();
    return json{{"experiment", "rounding"},
                {"p_tilde_solves", estimate_to_json(wilson_estimate(tilde, m))},
                {"p_hat_solves", estimate_to_json(wilson_estimate(hat, m))},
                {"p_tilde_not_hat", estimate_to_json(wilson_estimate(gap, m))},
                {"p_hat_interior", estimate_to_json(wilson_estimate(interior, m))},
                {"mean_resampled", resampled / m}};
}

json summarize_scaling(const json& r, const Csv& csv) {
    int ci_n = csv.column("n"), ci_e = csv.column("energy");
    if (ci_n < 0 || ci_e < 0) throw SchemaError("scaling CSV missing columns");
    std::vector<int> sizes = r.at("n").get<std::vector<int>>();
    json per_n = json::array();
    for (int n : sizes) {
        std::vector<double> energies;
        for (const auto& row : csv.rows)
            if (std::stoi(row[ci_n]) == n) energies.push_back(std::stod(row[ci_e]));
        double med = median(energies);
        per_n.push_back(json{{"n", n},
                             {"trials", energies.size()},
                             {"median_energy", real_field(med)},
                             {"median_log2_disc", real_field(-med)}});
    }
    return json{{"experiment", "scaling"}, {"per_n", per_n}};
}

}  // namespace

json summarize_csv(const json& resolved, const std::string& csv_text) {
    Csv csv = Csv::parse(csv_text);
    std::string exp = resolved.at("experiment").get<std::string>();
    if (exp == "obstruction") return summarize_obstruction(resolved, csv);
    if (exp == "repel") return summarize_repel(resolved, csv);
    if (exp == "stability") return summarize_stability(resolved, csv);
    if (exp == "rounding") return summarize_rounding(resolved, csv);
    if (exp == "scaling") return summarize_scaling(resolved, csv);
    throw SchemaError("config field 'experiment': unknown experiment '" + exp + "'");
}

RunResult run_config(const json& config, int workers) {
    RunResult out;
    out.resolved = resolve_config(config);
    std::string exp = out.resolved.at("experiment").get<std::string>();
    std::string started = iso_now();
    Csv csv;
    if (exp == "obstruction") csv = run_obstruction(out.resolved, workers);
    else if (exp == "repel") csv = run_repel(out.resolved, workers);
    else if (exp == "stability") csv = run_stability(out.resolved, workers);
    else if (exp == "rounding") csv = run_rounding(out.resolved, workers);
    else csv = run_scaling(out.resolved, workers);
    out.csv = csv.to_string();
    out.summary = summarize_csv(out.resolved, out.csv);
    out.manifest = json{{"artifact_version", kArtifactVersion},
                        {"config", config},
                        {"resolved", out.resolved},
                        {"root_seed", out.resolved.at("seed")},
                        {"started", started},
                        {"finished", iso_now()},
                        {"outputs", json::array()}};
    return out;
}

RunResult run_experiment(const json& config, const std::string& out_dir, int workers) {
    RunResult out = run_config(config, workers);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "'");
    std::string exp = out.resolved.at("experiment").get<std::string>();
    std::string csv_path = out_dir + "/" + exp + ".csv";
    std::string summary_path = out_dir + "/summary.json";
    std::string manifest_path = out_dir + "/manifest.json";
    out.manifest["outputs"] = json::array({csv_path, summary_path, manifest_path});
    write_file(csv_path, out.csv);
    write_file(summary_path, out.summary.dump(2) + "\n");
    write_file(manifest_path, out.manifest.dump(2) + "\n");
    out.outputs = {csv_path, summary_path, manifest_path};
    return out;
}

}  // namespace npplab

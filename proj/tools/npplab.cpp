// npplab: seeded NPP instance generation, solving, and experiment runs.
//
// Exit codes: 0 ok, 2 schema/usage, 3 cap, 4 internal assertion, 5 I/O.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "npplab/experiments.hpp"
#include "npplab/io.hpp"

using nlohmann::json;
using namespace npplab;

namespace {

struct GenArgs {
    int n = 16;
    std::string dist = "gaussian";
    int scale_bits = 128;
    int count = 1;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_gen(const GenArgs& a) {
    if (a.n < 1) throw SchemaError("gen: n must be >= 1");
    if (a.count < 0) throw SchemaError("gen: count must be >= 0");
    Dist dist = dist_from_name(a.dist);
    std::vector<Instance> instances;
    for (int i = 0; i < a.count; ++i)
        instances.push_back(sample_instance(a.n, dist, a.scale_bits,
                                            derive_seed(a.seed, i, StreamPurpose::instance)));
    if (a.out.empty()) {
        write_instances_jsonl(std::cout, instances);
    } else {
        write_instances_file(a.out, instances);
    }
    return 0;
}

int cmd_solve(const std::string& file, const std::string& solver) {
    if (!valid_solver_name(solver))
        throw SchemaError("solve: unknown solver '" + solver + "'");
    std::vector<Instance> instances = read_instances_file(file);
    for (const Instance& g : instances) {
        SolveResult res = solve_by_name(solver, g);
        json out{{"x", res.x.to_string()},
                 {"disc_q", wide_to_hex(res.disc_q)},
                 {"energy", format_double(res.energy)},
                 {"work", res.work},
                 {"elapsed_ms", res.elapsed_ms}};
        std::cout << out.dump() << '\n';
    }
    return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int workers,
            bool seed_set, std::uint64_t seed) {
    json config = json::parse(read_file(config_path), nullptr, false);
    if (config.is_discarded()) throw SchemaError("config file '" + config_path + "' is not JSON");
    if (seed_set) config["seed"] = seed;
    RunResult res = run_experiment(config, out_dir, workers);
    std::cout << res.summary.dump(2) << '\n';
    return 0;
}

int cmd_summarize(const std::string& out_dir) {
    json manifest = json::parse(read_file(out_dir + "/manifest.json"), nullptr, false);
    if (manifest.is_discarded() || !manifest.contains("resolved"))
        throw SchemaError("'" + out_dir + "/manifest.json' is not a run manifest");
    const json& resolved = manifest.at("resolved");
    std::string exp = resolved.at("experiment").get<std::string>();
    std::string csv = read_file(out_dir + "/" + exp + ".csv");
    std::cout << summarize_csv(resolved, csv).dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic number partitioning laboratory"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "sample instances to JSONL");
    gen_cmd->add_option("-n,--n", gen.n, "number of entries");
    gen_cmd->add_option("--dist", gen.dist, "gaussian or uniform_pm1");
    gen_cmd->add_option("--scale-bits", gen.scale_bits, "fixed-point scale B");
    gen_cmd->add_option("--count", gen.count, "number of instances");
    gen_cmd->add_option("--seed", gen.seed, "root seed");
    gen_cmd->add_option("--out", gen.out, "output file (default: stdout)");

    std::string solve_file, solve_solver = "bf";
    auto* solve_cmd = app.add_subcommand("solve", "solve instances from a JSONL file");
    solve_cmd->add_option("file", solve_file, "instance JSONL file")->required();
    solve_cmd->add_option("solver", solve_solver,
                          "bf | mitm | greedy | kk | hybrid:<j> | improve:<r>");

    std::string run_config, run_out = "out";
    int run_workers = 1;
    std::uint64_t run_seed = 0;
    bool run_seed_set = false;
    auto* run_cmd = app.add_subcommand("run", "run an experiment from a config");
    run_cmd->add_option("--config", run_config, "experiment config JSON")->required();
    run_cmd->add_option("--out", run_out, "output directory");
    run_cmd->add_option("--workers", run_workers, "worker thread count");
    run_cmd->add_option("--seed", run_seed, "override the config seed")
        ->each([&](const std::string&) { run_seed_set = true; });

    std::string sum_out = "out";
    auto* sum_cmd = app.add_subcommand("summarize", "recompute the summary for a run directory");
    sum_cmd->add_option("--out", sum_out, "run output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (solve_cmd->parsed()) return cmd_solve(solve_file, solve_solver);
        if (run_cmd->parsed())
            return cmd_run(run_config, run_out, run_workers, run_seed_set, run_seed);
        if (sum_cmd->parsed()) return cmd_summarize(sum_out);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 5;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}

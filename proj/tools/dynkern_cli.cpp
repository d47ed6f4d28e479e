#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dynkern/cli_lib.hpp"

using namespace dynkern;

namespace {

EngineConfig make_config(int c, int omega, std::size_t s1, std::size_t s2, std::size_t k,
                         bool paranoid, const std::string& plugin) {
    EngineConfig cfg;
    cfg.c = c;
    cfg.omega = omega;
    cfg.s1 = s1;
    cfg.s2 = s2;
    cfg.k = k;
    cfg.paranoid = paranoid;
    auto p = plugin_from_name(plugin);
    if (!p) throw ConfigError("unknown plugin '" + plugin + "'");
    cfg.kernel_plugin = *p;
    return cfg;
}

std::vector<cli::StreamOp> read_stream_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open stream file " + path);
    return cli::parse_stream(in);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic graph decomposition and kernel maintenance"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "feed an update stream to the engine");
    std::string run_stream, run_kernel_out, run_metrics, run_store, run_plugin = "vc";
    std::string run_dump_decomp, run_dump_chips;
    int run_c = 3, run_omega = 2;
    std::size_t run_s1 = 16, run_s2 = 64, run_k = 2;
    bool run_paranoid = false;
    run->add_option("--stream", run_stream, "update stream file")->required();
    run->add_option("--kernel-out", run_kernel_out, "kernel delta protocol output");
    run->add_option("--metrics", run_metrics, "metrics JSONL output ('-' = stdout)");
    run->add_option("--store", run_store, "representative store file");
    run->add_option("--plugin", run_plugin, "kernel plugin: vc or ds");
    run->add_option("--c", run_c, "adhesion/semigood parameter (>= 3)");
    run->add_option("--omega", run_omega, "target internal treewidth for merges");
    run->add_option("--s1", run_s1, "chip volume threshold");
    run->add_option("--s2", run_s2, "chip size bound");
    run->add_option("--k", run_k, "chip boundary bound");
    run->add_flag("--paranoid", run_paranoid, "full verification after every update");
    run->add_option("--dump-decomposition", run_dump_decomp, "write final decomposition dump");
    run->add_option("--dump-chips", run_dump_chips, "write final chip group dump");
    std::string run_dump_gv;
    std::size_t run_oracle_every = 0;
    run->add_option("--dump-graphviz", run_dump_gv, "write the final tree in graphviz form");
    run->add_option("--oracle-ratio-every", run_oracle_every,
                    "emit root-degree/tw-mod ratios every N updates (small graphs)");

    // gen
    auto* gen = app.add_subcommand("gen", "generate an update stream");
    std::string gen_kind = "grid", gen_out;
    std::size_t gen_n = 16;
    std::uint64_t gen_seed = 1;
    gen->add_option("--kind", gen_kind,
                    "grid | random-planar-incremental | bounded-degree-tree-plus | "
                    "mixed-insert-delete");
    gen->add_option("--n", gen_n, "target vertex count");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    // bench
    auto* bench = app.add_subcommand("bench", "work-per-update trend over stream sizes");
    std::vector<std::string> bench_streams;
    std::vector<std::size_t> bench_sizes;
    std::string bench_kind = "random-planar-incremental";
    std::uint64_t bench_seed = 1;
    double bench_ceiling = 4.0;
    int bench_c = 3, bench_omega = 2;
    bench->add_option("--stream", bench_streams, "stream files (repeatable)");
    bench->add_option("--sizes", bench_sizes, "generate streams of these sizes");
    bench->add_option("--kind", bench_kind, "generator kind for --sizes");
    bench->add_option("--seed", bench_seed, "seed for --sizes");
    bench->add_option("--ratio-ceiling", bench_ceiling, "assert work ratio below this");
    bench->add_option("--c", bench_c, "adhesion/semigood parameter");
    bench->add_option("--omega", bench_omega, "target internal treewidth");

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize a representative store");
    std::string synth_plugin = "vc", synth_out;
    std::size_t synth_t = 2, synth_n = 5;
    synth->add_option("--plugin", synth_plugin, "vc or ds")->required();
    synth->add_option("--t-max", synth_t, "max boundary size (<= 4)");
    synth->add_option("--n-max", synth_n, "max representative vertices (<= 8)");
    synth->add_option("--out", synth_out, "store output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            cli::RunOptions opts;
            opts.config = make_config(run_c, run_omega, run_s1, run_s2, run_k, run_paranoid,
                                      run_plugin);
            opts.kernel_out = run_kernel_out;
            opts.metrics_out = run_metrics;
            opts.store_path = run_store;
            opts.dump_decomposition = run_dump_decomp;
            opts.dump_graphviz = run_dump_gv;
            opts.dump_chips = run_dump_chips;
            opts.oracle_ratio_every = run_oracle_every;
            auto stream = read_stream_file(run_stream);
            cli::RunResult res = cli::cmd_run(stream, opts);
            if (res.exit_code != 0) {
                std::cerr << "error: " << res.error << "\n";
                return res.exit_code;
            }
            std::cout << "ok updates=" << res.updates << " kernel_size=" << res.final_kernel_size
                      << " delta=" << res.final_delta << "\n";
            return 0;
        }
        if (gen->parsed()) {
            auto ops = cli::generate_stream(gen_kind, gen_n, gen_seed);
            std::string text = cli::stream_to_text(ops);
            if (gen_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(gen_out, std::ios::binary);
                out << text;
            }
            return 0;
        }
        if (bench->parsed()) {
            std::vector<std::vector<cli::StreamOp>> streams;
            for (const auto& path : bench_streams) streams.push_back(read_stream_file(path));
            for (std::size_t n : bench_sizes)
                streams.push_back(cli::generate_stream(bench_kind, n, bench_seed));
            EngineConfig cfg;
            cfg.c = bench_c;
            cfg.omega = bench_omega;
            cli::BenchResult res = cli::cmd_bench(streams, cfg, bench_ceiling);
            std::cout << res.table;
            std::cout << "# work_ratio " << res.work_ratio << " slope " << res.slope << "\n";
            if (res.exit_code != 0) std::cerr << "work ratio exceeds the ceiling\n";
            return res.exit_code;
        }
        if (synth->parsed()) {
            auto p = plugin_from_name(synth_plugin);
            if (!p) throw ConfigError("unknown plugin");
            cli::SynthResult res = cli::cmd_synth(*p, synth_t, synth_n, synth_out);
            std::cout << "classes=" << res.classes << " max_rep_vertices=" << res.max_rep_vertices
                      << " self_check=" << (res.self_check ? "pass" : "fail") << "\n";
            return res.exit_code;
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

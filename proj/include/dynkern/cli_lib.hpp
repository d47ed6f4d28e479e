#ifndef DYNKERN_CLI_LIB_HPP
#define DYNKERN_CLI_LIB_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "dynkern/engine.hpp"

namespace dynkern::cli {

struct StreamOp {
    enum class Kind { AddVertex, DeleteVertex, AddEdge, DeleteEdge };
    Kind kind;
    VertexId u = 0, v = 0;
    std::string to_line() const;
};

// Line protocol: `av <id>`, `dv <id>`, `ae <u> <v>`, `de <u> <v>`, comments
// start with '#'. Parse errors carry 1-based line numbers.
std::vector<StreamOp> parse_stream(std::istream& in);
std::vector<StreamOp> parse_stream_text(const std::string& text);
std::string stream_to_text(const std::vector<StreamOp>& ops);

// Deterministic instance generators. Kinds: grid,
// random-planar-incremental, bounded-degree-tree-plus, mixed-insert-delete.
std::vector<StreamOp> generate_stream(const std::string& kind, std::size_t n, std::uint64_t seed);

struct RunOptions {
    EngineConfig config;
    std::string kernel_out;  // path or empty
    std::string metrics_out; // path or empty; '-' = stdout
    std::string store_path;  // representative store, optional
    std::string dump_decomposition; // final (T, L, adhesions) dump path
    std::string dump_graphviz;      // final tree as graphviz
    std::string dump_chips;         // final chip groups
    std::size_t oracle_ratio_every = 0; // compute root-degree/tw-mod when small
    bool quiet = false;
};

struct RunResult {
    int exit_code = 0;
    std::string error;
    std::size_t updates = 0;
    EngineMetrics metrics;
    std::size_t final_kernel_size = 0;
    long long final_delta = 0;
};

RunResult cmd_run(const std::vector<StreamOp>& stream, const RunOptions& opts);

struct BenchBucket {
    std::size_t n = 0;
    std::size_t updates = 0;
    double avg_work = 0.0;
    double max_depth_over_log = 0.0;
};

struct BenchResult {
    int exit_code = 0;
    std::vector<BenchBucket> buckets;
    double work_ratio = 0.0; // biggest/smallest bucket average
    double slope = 0.0;      // fit of work vs log2 n
    std::string table;       // plot-ready text
};

BenchResult cmd_bench(const std::vector<std::vector<StreamOp>>& streams, const EngineConfig& cfg,
                      double ratio_ceiling);

struct SynthResult {
    int exit_code = 0;
    std::size_t classes = 0;
    std::size_t max_rep_vertices = 0;
    bool self_check = false;
};

SynthResult cmd_synth(Plugin plugin, std::size_t t_max, std::size_t n_max,
                      const std::string& out_path);

} // namespace dynkern::cli

#endif

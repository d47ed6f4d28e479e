#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "dynkern/cli_lib.hpp"
#include "dynkern/verify.hpp"
#include "testutil.hpp"

using namespace dynkern;
using namespace dynkern::cli;

TEST_CASE("stream parsing and errors") {
    auto ops = parse_stream_text("av 1\nae 1 2\n# comment\nde 1 2\ndv 1\n");
    CHECK(ops.size() == 4);
    CHECK(ops[0].kind == StreamOp::Kind::AddVertex);
    CHECK(ops[1].kind == StreamOp::Kind::AddEdge);
    CHECK(ops[1].v == 2);

    CHECK_THROWS_WITH_AS(parse_stream_text("av 1\nxx 2\n"),
                         doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_AS(parse_stream_text("ae 1\n"), ParseError);
}

TEST_CASE("grid generator counts") {
    auto ops = generate_stream("grid", 9, 1);
    std::size_t av = 0, ae = 0;
    for (const auto& op : ops) {
        if (op.kind == StreamOp::Kind::AddVertex) ++av;
        if (op.kind == StreamOp::Kind::AddEdge) ++ae;
    }
    CHECK(av == 9);
    CHECK(ae == 12);
}

TEST_CASE("generators are deterministic by seed") {
    for (std::string kind : {"grid", "random-planar-incremental", "bounded-degree-tree-plus",
                             "mixed-insert-delete"}) {
        auto a = generate_stream(kind, 24, 7);
        auto b = generate_stream(kind, 24, 7);
        CHECK(stream_to_text(a) == stream_to_text(b));
    }
    CHECK_THROWS_AS(generate_stream("nope", 5, 1), ParseError);
}

TEST_CASE("generated planar streams satisfy the planarity budget") {
    // Euler bound as the validator: any planar stream keeps m <= 3n - 6
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto ops = generate_stream("random-planar-incremental", 30, seed);
        Graph g;
        for (const auto& op : ops) {
            switch (op.kind) {
                case StreamOp::Kind::AddVertex: g.add_vertex(op.u); break;
                case StreamOp::Kind::DeleteVertex: g.delete_vertex(op.u); break;
                case StreamOp::Kind::AddEdge: g.add_edge(op.u, op.v); break;
                case StreamOp::Kind::DeleteEdge: g.delete_edge(op.u, op.v); break;
            }
            if (g.num_vertices() >= 3) CHECK(g.num_edges() <= 3 * g.num_vertices() - 6);
        }
    }
}

TEST_CASE("mixed streams replay without errors and end consistent") {
    auto ops = generate_stream("mixed-insert-delete", 20, 5);
    Graph g;
    for (const auto& op : ops) {
        switch (op.kind) {
            case StreamOp::Kind::AddVertex: g.add_vertex(op.u); break;
            case StreamOp::Kind::DeleteVertex: g.delete_vertex(op.u); break;
            case StreamOp::Kind::AddEdge: g.add_edge(op.u, op.v); break;
            case StreamOp::Kind::DeleteEdge: g.delete_edge(op.u, op.v); break;
        }
    }
    CHECK(g.num_vertices() == 20);
}

TEST_CASE("cmd_run over a small stream produces an exact kernel") {
    auto ops = parse_stream_text("av 0\nav 1\nav 2\nav 3\nae 0 1\nae 1 2\nae 2 3\nae 0 3\n");
    RunOptions opts;
    opts.config.s1 = 4;
    opts.config.s2 = 16;
    opts.config.paranoid = true;
    RunResult res = cmd_run(ops, opts);
    INFO(res.error);
    CHECK(res.exit_code == 0);
    CHECK(res.updates == 8);
    // C4: VC optimum 2; the verbatim kernel preserves it
    CHECK(res.final_delta >= 0);
}

TEST_CASE("cmd_run reports parse-level engine errors with the update index") {
    auto ops = parse_stream_text("av 0\nav 1\nde 0 1\n");
    RunOptions opts;
    RunResult res = cmd_run(ops, opts);
    CHECK(res.exit_code == 1);
    CHECK(res.error.find("update 3") != std::string::npos);
}

TEST_CASE("metrics stream is reproducible") {
    auto ops = generate_stream("random-planar-incremental", 12, 3);
    for (int round = 0; round < 2; ++round) {
        RunOptions opts;
        opts.config.s1 = 4;
        opts.config.s2 = 16;
        opts.metrics_out = "/tmp/dynkern_metrics_" + std::to_string(round) + ".jsonl";
        RunResult res = cmd_run(ops, opts);
        CHECK(res.exit_code == 0);
    }
    std::ifstream a("/tmp/dynkern_metrics_0.jsonl"), b("/tmp/dynkern_metrics_1.jsonl");
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    CHECK(sa.find("\"schema\"") != std::string::npos);
    std::remove("/tmp/dynkern_metrics_0.jsonl");
    std::remove("/tmp/dynkern_metrics_1.jsonl");
}

TEST_CASE("kernel stream replays to the final kernel") {
    auto ops = parse_stream_text("av 0\nav 1\nav 2\nae 0 1\nae 1 2\n");
    RunOptions opts;
    opts.config.s1 = 4;
    opts.config.s2 = 16;
    opts.kernel_out = "/tmp/dynkern_kernel.txt";
    RunResult res = cmd_run(ops, opts);
    REQUIRE(res.exit_code == 0);
    // replay kv/ke lines
    std::ifstream in("/tmp/dynkern_kernel.txt");
    Graph k;
    long long delta = 0;
    std::string tag;
    while (in >> tag) {
        if (tag == "kv+") {
            VertexId v;
            in >> v;
            k.add_vertex(v);
        } else if (tag == "kv-") {
            VertexId v;
            in >> v;
            k.delete_vertex(v);
        } else if (tag == "ke+") {
            VertexId u, v;
            in >> u >> v;
            k.add_edge(u, v);
        } else if (tag == "ke-") {
            VertexId u, v;
            in >> u >> v;
            k.delete_edge(u, v);
        } else if (tag == "kd") {
            in >> delta;
        }
    }
    CHECK(k.size() == res.final_kernel_size);
    CHECK(delta == res.final_delta);
    std::remove("/tmp/dynkern_kernel.txt");
}

TEST_CASE("cmd_bench buckets and ratio") {
    std::vector<std::vector<StreamOp>> streams;
    streams.push_back(generate_stream("random-planar-incremental", 16, 1));
    streams.push_back(generate_stream("random-planar-incremental", 32, 1));
    EngineConfig cfg;
    cfg.s1 = 4;
    cfg.s2 = 16;
    BenchResult res = cmd_bench(streams, cfg, 0.0); // no assertion
    CHECK(res.buckets.size() == 2);
    CHECK(res.buckets[0].updates > 0);
    CHECK(res.table.find("#") != std::string::npos);
}

TEST_CASE("dump flags write the debug views") {
    auto ops = parse_stream_text("av 0\nav 1\nae 0 1\n");
    RunOptions opts;
    opts.config.s1 = 4;
    opts.config.s2 = 16;
    opts.dump_decomposition = "/tmp/dynkern_dump.txt";
    opts.dump_graphviz = "/tmp/dynkern_gv.txt";
    opts.dump_chips = "/tmp/dynkern_chips.txt";
    RunResult res = cmd_run(ops, opts);
    REQUIRE(res.exit_code == 0);
    std::ifstream d("/tmp/dynkern_dump.txt"), g("/tmp/dynkern_gv.txt"), c("/tmp/dynkern_chips.txt");
    std::string sd((std::istreambuf_iterator<char>(d)), std::istreambuf_iterator<char>());
    std::string sg((std::istreambuf_iterator<char>(g)), std::istreambuf_iterator<char>());
    std::string sc((std::istreambuf_iterator<char>(c)), std::istreambuf_iterator<char>());
    CHECK(sd.find("node 0") != std::string::npos);
    CHECK(sg.find("digraph") != std::string::npos);
    CHECK(sc.find("group") != std::string::npos);
    std::remove("/tmp/dynkern_dump.txt");
    std::remove("/tmp/dynkern_gv.txt");
    std::remove("/tmp/dynkern_chips.txt");
}

TEST_CASE("cmd_synth writes a verifiable store") {
    SynthResult res = cmd_synth(Plugin::VertexCover, 1, 3, "/tmp/dynkern_store.txt");
    CHECK(res.exit_code == 0);
    CHECK(res.self_check);
    CHECK(res.classes > 0);
    RepresentativeStore store = RepresentativeStore::load("/tmp/dynkern_store.txt");
    CHECK(store.self_verify());
    std::remove("/tmp/dynkern_store.txt");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynkern/kernel.hpp"
#include "dynkern/verify.hpp"
#include "testutil.hpp"

using namespace dynkern;
using testutil::Rng;

TEST_CASE("normalize_ops cancels add/delete pairs") {
    OperationSeq seq;
    seq.push(HgOp::add_vertex(5));
    seq.push(HgOp::add_hyperedge(3, {5}));
    seq.push(HgOp::delete_hyperedge(3, {5}));
    seq.push(HgOp::delete_vertex(5));
    OperationSeq norm = normalize_ops(seq);
    CHECK(norm.length() == 0);

    OperationSeq seq2;
    seq2.push(HgOp::add_vertex(5));
    seq2.push(HgOp::add_hyperedge(3, {5}));
    OperationSeq norm2 = normalize_ops(seq2);
    CHECK(norm2.length() == 2);

    // vertex pair with a surviving reference in between must stay
    OperationSeq seq3;
    seq3.push(HgOp::add_vertex(5));
    seq3.push(HgOp::delete_hyperedge(9, {5}));
    seq3.push(HgOp::delete_vertex(5));
    OperationSeq norm3 = normalize_ops(seq3);
    CHECK(norm3.length() == 3);
}

TEST_CASE("kernel op lines") {
    KernelOp a{KernelOp::Kind::AddVertex, 7, {}, 0};
    CHECK(a.to_line() == "kv+ 7");
    KernelOp b{KernelOp::Kind::AddEdge, 0, GEdge(3, 1), 0};
    CHECK(b.to_line() == "ke+ 1 3");
    KernelOp c{KernelOp::Kind::Shift, 0, {}, 4};
    CHECK(c.to_line() == "kd 4");
}

namespace {

// builds a flat decomposition + run + kernel from a plain graph
struct Fixture {
    SuperbranchDecomp d;
    PluginRun run;
    Fixture(const Graph& g, Plugin p)
        : d(SuperbranchDecomp::flat(support_hypergraph(g))), run(p, 16) {
        run.compute_run(d);
    }
};

} // namespace

TEST_CASE("assembled kernel on an empty decomposition") {
    SuperbranchDecomp d;
    PluginRun run(Plugin::VertexCover, 16);
    run.compute_run(d);
    KernelState ks = KernelState::assemble(d, run, Plugin::VertexCover, nullptr);
    CHECK(ks.kernel().num_vertices() == 0);
    CHECK(ks.delta() == 0);
}

TEST_CASE("verbatim assembly preserves the optimum exactly") {
    Rng rng(6);
    for (Plugin p : {Plugin::VertexCover, Plugin::DominatingSet}) {
        for (int iter = 0; iter < 20; ++iter) {
            Graph g = testutil::random_graph(rng, 6, 0.4);
            Fixture fx(g, p);
            KernelState ks = KernelState::assemble(fx.d, fx.run, p, nullptr);
            CHECK(opt_of(p, ks.kernel()) + ks.delta() == opt_of(p, g));
            CHECK(ks.delta() >= 0);
        }
    }
}

TEST_CASE("replaced assembly with a store preserves the optimum") {
    Rng rng(8);
    auto vc_store = RepresentativeStore::synthesize(Plugin::VertexCover, 2, 4);
    auto ds_store = RepresentativeStore::synthesize(Plugin::DominatingSet, 2, 4);
    for (Plugin p : {Plugin::VertexCover, Plugin::DominatingSet}) {
        const RepresentativeStore& store = p == Plugin::VertexCover ? vc_store : ds_store;
        for (int iter = 0; iter < 20; ++iter) {
            Graph g = testutil::random_graph(rng, 6, 0.4);
            Fixture fx(g, p);
            KernelState ks = KernelState::assemble(fx.d, fx.run, p, &store);
            CHECK(opt_of(p, ks.kernel()) + ks.delta() == opt_of(p, g));
            CHECK(ks.delta() >= 0);
        }
    }
}

TEST_CASE("path P6 under the VC plugin yields OPT(K) + delta = 3") {
    Graph p6 = testutil::path_graph(6);
    auto store = RepresentativeStore::synthesize(Plugin::VertexCover, 2, 4);
    Fixture fx(p6, Plugin::VertexCover);
    KernelState ks = KernelState::assemble(fx.d, fx.run, Plugin::VertexCover, &store);
    CHECK(opt_vc(p6) == 3);
    CHECK(opt_vc(ks.kernel()) + ks.delta() == 3);
}

TEST_CASE("incremental apply equals reassembly across torso changes") {
    Rng rng(12);
    Graph g = testutil::path_graph(6);
    Plugin p = Plugin::VertexCover;
    auto store = RepresentativeStore::synthesize(p, 2, 4);

    SuperbranchDecomp d = SuperbranchDecomp::flat(support_hypergraph(g));
    PluginRun run(p, 16);
    run.compute_run(d);

    // bootstrap an incremental kernel by replaying the flat construction's
    // torso as one big add sequence
    KernelState inc(p, &store);
    OperationSeq bootstrap;
    const auto& rn = d.node(d.root());
    for (VertexId v : rn.torso.vertices()) bootstrap.push(HgOp::add_vertex(v));
    for (EdgeId te : rn.torso.edges())
        bootstrap.push(HgOp::add_hyperedge(te, rn.torso.edge_vertices(te)));
    std::vector<std::pair<GEdge, bool>> edelta;
    for (const GEdge& e : d.root_el()) edelta.push_back({e, true});
    inc.apply_change(d, run, bootstrap, edelta);
    CHECK(inc.signature() == KernelState::assemble(d, run, p, &store).signature());

    // random root splits/contracts, re-applying each batch's deltas
    for (int step = 0; step < 8; ++step) {
        NodeId r = d.root();
        d.begin_batch();
        std::vector<EdgeId> tes = d.node(r).torso.edges();
        if (tes.size() >= 4 && rng.chance(0.7)) {
            HyperedgeSet c{tes[rng.below(tes.size())]};
            while (c.size() < 2) c.insert(tes[rng.below(tes.size())]);
            if (d.node(r).torso.num_edges() >= c.size() + 2) d.split(r, c);
        } else {
            for (NodeId cnode : d.node(r).children)
                if (!d.node(cnode).is_leaf()) {
                    d.contract_edge(cnode);
                    break;
                }
        }
        BatchReport rep = d.finish_batch();
        std::set<NodeId> dirty = rep.trace;
        for (NodeId t : rep.edges_dirty) dirty.insert(t);
        run.repair_run(d, dirty);
        inc.apply_change(d, run, rep.root_torso_ops, rep.edges_root_delta);
        KernelState fresh = KernelState::assemble(d, run, p, &store);
        CHECK(inc.signature() == fresh.signature());
        CHECK(opt_vc(inc.kernel()) + inc.delta() == opt_vc(g));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dynkern/balancing.hpp"
#include "testutil.hpp"

using namespace dynkern;
using testutil::Rng;

namespace {

// Builds a decomposition of a path support with one root child holding a
// left-deep caterpillar chain over path-contiguous prefixes, so that every
// chain node has a small adhesion: ((..((e1 e2) e3) e4) ...).
SuperbranchDecomp caterpillar(int n_leaves, NodeId* top_out) {
    int n = std::max(4, n_leaves / 2 + 1);
    Hypergraph h = support_hypergraph(testutil::path_graph(n));
    SuperbranchDecomp d = SuperbranchDecomp::flat(h);
    NodeId r = d.root();

    // support edges in path-interleaved order: v0, 01, v1, 12, v2, ...
    std::vector<EdgeId> order;
    std::map<std::vector<VertexId>, EdgeId> by_verts;
    for (EdgeId e : h.edges()) by_verts[h.edge_vertices(e)] = e;
    for (int i = 0; i < n; ++i) {
        order.push_back(by_verts.at({static_cast<VertexId>(i)}));
        if (i + 1 < n)
            order.push_back(by_verts.at({static_cast<VertexId>(i), static_cast<VertexId>(i + 1)}));
    }

    d.begin_batch();
    if (order.size() < 6) {
        d.finish_batch();
        *top_out = kNoNode;
        return d;
    }
    HyperedgeSet first{d.node(r).nbr_to_torso.at(d.leaf_of(order[0])),
                       d.node(r).nbr_to_torso.at(d.leaf_of(order[1]))};
    auto [w, ops] = d.split(r, first);
    (void)ops;
    NodeId chain = w;
    for (std::size_t i = 2; i + 2 < order.size(); ++i) {
        if (d.node(r).torso.num_edges() < 4) break;
        HyperedgeSet pair{d.node(r).nbr_to_torso.at(chain),
                          d.node(r).nbr_to_torso.at(d.leaf_of(order[i]))};
        auto [w2, ops2] = d.split(r, pair);
        (void)ops2;
        chain = w2;
    }
    d.finish_batch();
    *top_out = chain;
    return d;
}

} // namespace

TEST_CASE("balance config bounds") {
    BalanceConfig cfg;
    cfg.c = 3;
    CHECK(cfg.max_degree() == 65);
    CHECK(cfg.window() == 128);
    cfg.c = 2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("potential formula on a star decomposition") {
    Hypergraph h = support_hypergraph(testutil::path_graph(3));
    SuperbranchDecomp d = SuperbranchDecomp::flat(h);
    std::size_t m = h.num_edges();
    CHECK(d.potential() ==
          doctest::Approx((double(m) - 1.0) * std::log2(double(m))).epsilon(1e-9));
}

TEST_CASE("unbalance detection on constructed caterpillars") {
    BalanceConfig cfg;
    cfg.c = 3;
    NodeId top = kNoNode;
    SuperbranchDecomp small_d = caterpillar(40, &top);
    if (top != kNoNode) CHECK(unbalanced_nodes(small_d, top, cfg.window()).empty());

    SuperbranchDecomp big = caterpillar(560, &top);
    REQUIRE(top != kNoNode);
    CHECK(big.subtree_depth(top) >= cfg.window());
    CHECK_FALSE(unbalanced_nodes(big, top, cfg.window()).empty());
}

TEST_CASE("rebalance fixes a deep caterpillar without raising the potential") {
    BalanceConfig cfg;
    cfg.c = 3;
    NodeId top = kNoNode;
    SuperbranchDecomp d = caterpillar(560, &top);
    REQUIRE(top != kNoNode);
    REQUIRE_FALSE(unbalanced_nodes(d, top, cfg.window()).empty());
    double phi_before = d.potential();

    Balancer b(d, cfg);
    d.begin_batch();
    b.rebalance_subtree(top);
    d.finish_batch();

    CHECK(unbalanced_nodes(d, top, cfg.window()).empty());
    CHECK(d.potential() <= phi_before + 1e-6);
    std::size_t leaves = d.node(top).leaf_count;
    CHECK(d.subtree_depth(top) <=
          cfg.window() * (std::size_t)(std::log2(double(leaves)) + 2));
    for (NodeId v : d.subtree_nodes(top))
        if (!d.node(v).is_leaf()) CHECK(d.node(v).children.size() <= cfg.max_degree());
    for (NodeId v : d.subtree_nodes(top))
        CHECK(d.node(v).adhesion.size() <= static_cast<std::size_t>(cfg.c));
    for (NodeId v : d.subtree_nodes(top)) {
        HyperedgeSet lv = d.leaf_edges_below(v);
        if (!lv.empty() && lv.size() <= 12) CHECK(is_well_linked(d.support(), lv));
    }
}

TEST_CASE("rebalance of already balanced subtree is a no-op") {
    Hypergraph h = support_hypergraph(testutil::path_graph(5));
    SuperbranchDecomp d = SuperbranchDecomp::flat(h);
    NodeId r = d.root();
    d.begin_batch();
    std::vector<EdgeId> tes = d.node(r).torso.edges();
    HyperedgeSet c{tes[0], tes[1]};
    auto [w, ops] = d.split(r, c);
    (void)ops;
    d.finish_batch();

    BalanceConfig cfg;
    cfg.c = 3;
    Balancer b(d, cfg);
    std::string before = d.dump();
    d.begin_batch();
    b.rebalance_subtree(w);
    BatchReport rep = d.finish_batch();
    CHECK(rep.rotations.rots.empty());
    CHECK(d.dump() == before);
}

TEST_CASE("rotate_to_root brings a deep leaf next to the root") {
    Hypergraph h = support_hypergraph(testutil::path_graph(6));
    SuperbranchDecomp d = SuperbranchDecomp::flat(h);
    NodeId r = d.root();

    EdgeId target = kNoEdge, single2 = kNoEdge, single3 = kNoEdge;
    for (EdgeId e : h.edges()) {
        if (h.edge_vertices(e) == std::vector<VertexId>{2, 3}) target = e;
        if (h.edge_vertices(e) == std::vector<VertexId>{2}) single2 = e;
        if (h.edge_vertices(e) == std::vector<VertexId>{3}) single3 = e;
    }
    REQUIRE(target != kNoEdge);

    d.begin_batch();
    EdgeId t1 = d.node(r).nbr_to_torso.at(d.leaf_of(target));
    EdgeId t2 = d.node(r).nbr_to_torso.at(d.leaf_of(single2));
    EdgeId t3 = d.node(r).nbr_to_torso.at(d.leaf_of(single3));
    auto [w1, o1] = d.split(r, HyperedgeSet{t1, t2, t3});
    (void)o1;
    EdgeId u1 = d.node(w1).nbr_to_torso.at(d.leaf_of(target));
    EdgeId u2 = d.node(w1).nbr_to_torso.at(d.leaf_of(single2));
    auto [w2, o2] = d.split(w1, HyperedgeSet{u1, u2});
    (void)w2;
    (void)o2;
    d.finish_batch();
    CHECK(d.depth(d.leaf_of(target)) == 3);

    BalanceConfig cfg;
    cfg.c = 3;
    Balancer b(d, cfg);
    d.begin_batch();
    NodeId tprime = b.rotate_to_root(w1, target);
    d.finish_batch();
    CHECK(d.node(d.leaf_of(target)).parent == tprime);
    CHECK(d.node(tprime).parent == d.root());
    for (NodeId v : d.subtree_nodes(d.root())) {
        if (v == d.root()) continue;
        HyperedgeSet lv = d.leaf_edges_below(v);
        if (lv.size() <= 12) CHECK(is_well_linked(d.support(), lv));
    }
}

TEST_CASE("rotate_to_root on an edge already at a root child is empty") {
    Hypergraph h = support_hypergraph(testutil::path_graph(4));
    SuperbranchDecomp d = SuperbranchDecomp::flat(h);
    EdgeId e = h.edges()[0];
    BalanceConfig cfg;
    cfg.c = 3;
    Balancer b(d, cfg);
    d.begin_batch();
    NodeId l = b.rotate_to_root(d.leaf_of(e), e);
    BatchReport rep = d.finish_batch();
    CHECK(rep.rotations.rots.empty());
    CHECK(l == d.leaf_of(e));
}

TEST_CASE("isolate brings up to three edges to the root") {
    Hypergraph h = support_hypergraph(testutil::path_graph(6));
    SuperbranchDecomp d = SuperbranchDecomp::flat(h);
    NodeId r = d.root();
    d.begin_batch();
    std::vector<EdgeId> picks;
    for (EdgeId e : h.edges())
        if (h.edge_vertices(e).size() == 1 && picks.size() < 3) picks.push_back(e);
    HyperedgeSet c;
    for (EdgeId e : picks) c.insert(d.node(r).nbr_to_torso.at(d.leaf_of(e)));
    auto [w, o] = d.split(r, c);
    (void)w;
    (void)o;
    d.finish_batch();
    for (EdgeId e : picks) CHECK(d.node(d.leaf_of(e)).parent != r);

    BalanceConfig cfg;
    cfg.c = 3;
    Balancer b(d, cfg);
    d.begin_batch();
    b.isolate(picks);
    BatchReport rep = d.finish_batch();
    for (EdgeId e : picks) CHECK(d.node(d.leaf_of(e)).parent == r);
    bool has_delete = false;
    for (const auto& op : rep.root_torso_ops.ops)
        if (op.kind == HgOp::Kind::DeleteHyperedge) has_delete = true;
    CHECK(has_delete);
    for (NodeId v : d.subtree_nodes(r)) {
        if (v == r) continue;
        HyperedgeSet lv = d.leaf_edges_below(v);
        if (lv.size() <= 12) CHECK(is_well_linked(d.support(), lv));
    }
}

TEST_CASE("phi never increases across random rebalances") {
    Rng rng(17);
    BalanceConfig cfg;
    cfg.c = 3;
    for (int iter = 0; iter < 30; ++iter) {
        int n = 6 + static_cast<int>(rng.below(6));
        Hypergraph h = support_hypergraph(testutil::path_graph(n));
        SuperbranchDecomp d = SuperbranchDecomp::flat(h);
        NodeId r = d.root();
        d.begin_batch();
        for (int step = 0; step < 5; ++step) {
            std::vector<EdgeId> tes = d.node(r).torso.edges();
            if (tes.size() < 4) break;
            HyperedgeSet c{tes[rng.below(tes.size())]};
            while (c.size() < 2) c.insert(tes[rng.below(tes.size())]);
            if (d.node(r).torso.num_edges() >= c.size() + 2) d.split(r, c);
        }
        d.finish_batch();
        for (NodeId child : std::vector<NodeId>(d.node(r).children)) {
            if (!d.alive(child) || d.node(child).is_leaf()) continue;
            double phi_before = d.potential();
            Balancer b(d, cfg);
            d.begin_batch();
            b.rebalance_subtree(child);
            d.finish_batch();
            CHECK(d.potential() <= phi_before + 1e-6);
        }
    }
}

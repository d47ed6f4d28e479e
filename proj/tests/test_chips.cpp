#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dynkern/chips.hpp"
#include "testutil.hpp"

using namespace dynkern;
using testutil::Rng;

namespace {

ChipOracle always_true() {
    return [](const HyperedgeSet&, const VertexSet&) { return true; };
}

ChipOracle always_false() {
    return [](const HyperedgeSet&, const VertexSet&) { return false; };
}

// Oracle depending on (S, bd(S)) only: passes iff |S| + |bd(S)| is even.
ChipOracle parity_oracle() {
    return [](const HyperedgeSet& s, const VertexSet& b) { return (s.size() + b.size()) % 2 == 0; };
}

// Replays random op histories into an index and checks brute-force equality.
void drive_random(ChipIndex& idx, Rng& rng, int steps, int max_vertices) {
    for (int step = 0; step < steps; ++step) {
        const Hypergraph& g = idx.mirror();
        double roll = static_cast<double>(rng.below(100)) / 100.0;
        if (roll < 0.25 && static_cast<int>(g.num_vertices()) < max_vertices) {
            idx.on_add_vertex(g.fresh_vertex_id());
        } else if (roll < 0.65 && g.num_vertices() > 0 && g.num_edges() < 11) {
            auto vs = g.vertices();
            std::vector<VertexId> pick;
            for (VertexId v : vs)
                if (rng.chance(0.3) && pick.size() < 3) pick.push_back(v);
            if (pick.empty()) pick.push_back(vs[rng.below(vs.size())]);
            idx.on_add_hyperedge(g.next_edge_id(), pick);
        } else if (g.num_edges() > 0) {
            auto es = g.edges();
            idx.on_delete_hyperedge(es[rng.below(es.size())]);
        }
        CHECK(idx.equals_bruteforce());
    }
}

} // namespace

TEST_CASE("static local search base cases") {
    // isolated hyperedge, k=0: bd empty, the only result is {e}
    Hypergraph h;
    h.add_vertex(0);
    EdgeId e = h.add_hyperedge({0});
    auto res = static_local_search(h, {e}, {}, 6, 6, 0);
    REQUIRE(res.size() == 1);
    CHECK(res[0] == HyperedgeSet{e});

    // |X| > k: empty immediately
    Graph tri = testutil::complete_graph(3);
    Hypergraph ht = support_hypergraph(tri);
    EdgeId e_ab = kNoEdge;
    for (EdgeId f : ht.edges())
        if (ht.edge_vertices(f) == std::vector<VertexId>{0, 1}) e_ab = f;
    auto res2 = static_local_search(ht, {e_ab}, {0, 1}, 6, 6, 1);
    CHECK(res2.empty());
}

TEST_CASE("static local search agrees with brute-force filtering") {
    Rng rng(8);
    for (int iter = 0; iter < 40; ++iter) {
        Hypergraph h = testutil::random_hypergraph(rng, 6, 7, 3);
        std::vector<EdgeId> es = h.edges();
        if (es.empty()) continue;
        EdgeId seed = es[rng.below(es.size())];
        std::size_t p = 2 + rng.below(4);
        std::size_t s = 3 + rng.below(4);
        std::size_t k = rng.below(4);

        auto got = static_local_search(h, {seed}, {}, p, s, k);
        std::set<HyperedgeSet> got_set(got.begin(), got.end());

        std::set<HyperedgeSet> want;
        for (std::uint64_t m = 1; m < (1ull << es.size()); ++m) {
            HyperedgeSet a;
            for (std::size_t i = 0; i < es.size(); ++i)
                if (m & (1ull << i)) a.insert(es[i]);
            if (!a.count(seed)) continue;
            if (a.size() > p) continue;
            BoundaryResult br = boundary(h, a);
            if (br.vertex_set.size() > s || br.boundary.size() > k) continue;
            bool all_touch = true;
            for (const auto& comp : internal_components(h, a))
                if (!comp.count(seed)) all_touch = false;
            if (!all_touch) continue;
            want.insert(a);
        }
        CHECK(got_set == want);
        CHECK(got.size() == got_set.size()); // no duplicates emitted
    }
}

TEST_CASE("triangle example includes the seed and supersets within bounds") {
    Graph tri = testutil::complete_graph(3);
    Hypergraph h = support_hypergraph(tri);
    EdgeId e_ab = kNoEdge;
    for (EdgeId f : h.edges())
        if (h.edge_vertices(f) == std::vector<VertexId>{0, 1}) e_ab = f;
    auto res = static_local_search(h, {e_ab}, {}, 6, 3, 2);
    std::set<HyperedgeSet> rs(res.begin(), res.end());
    CHECK(rs.count(HyperedgeSet{e_ab}));
    for (const auto& a : rs) {
        CHECK(a.count(e_ab));
        CHECK(a.size() <= 6);
        CHECK(lambda(h, a) <= 2);
    }
}

TEST_CASE("index stays empty with a false oracle") {
    ChipParams prm{2, 4, 2};
    ChipIndex idx(prm, always_false());
    idx.on_add_vertex(0);
    idx.on_add_vertex(1);
    idx.on_add_hyperedge(0, {0, 1});
    CHECK(idx.chip_count() == 0);
    CHECK(!idx.query());
    CHECK(idx.equals_bruteforce());
}

TEST_CASE("isolated vertex updates do not disturb the index") {
    ChipParams prm{2, 4, 2};
    ChipIndex idx(prm, always_true());
    idx.on_add_vertex(0);
    idx.on_add_hyperedge(0, {0});
    std::size_t n = idx.chip_count();
    idx.on_add_vertex(5);
    CHECK(idx.chip_count() == n);
    idx.on_delete_vertex(5);
    CHECK(idx.chip_count() == n);
    CHECK(idx.equals_bruteforce());
}

TEST_CASE("single chip query returns it; empty index returns nothing") {
    ChipParams prm{2, 4, 2};
    ChipIndex idx(prm, always_true());
    CHECK(!idx.query());
    idx.on_add_vertex(0);
    idx.on_add_vertex(1);
    idx.on_add_hyperedge(0, {0, 1});
    idx.on_add_hyperedge(1, {0, 1});
    // {e0,e1} has empty boundary; single edges have bd {0,1} <= k
    auto c = idx.query();
    REQUIRE(c.has_value());
    CHECK(lambda(idx.mirror(), *c) <= prm.k);
    CHECK(c->size() >= 1);
}

TEST_CASE("query unions small equal-boundary chips") {
    // several parallel 2-edge paths between u and v: each pair of parallel
    // path edges shares boundary {u, v}
    ChipParams prm{4, 16, 2};
    ChipIndex idx(prm, always_true());
    // u = 0, v = 1; middles 2..6
    for (VertexId v = 0; v <= 6; ++v) idx.on_add_vertex(v);
    EdgeId next = 0;
    for (VertexId mid = 2; mid <= 6; ++mid) {
        idx.on_add_hyperedge(next++, {0, mid});
        idx.on_add_hyperedge(next++, {mid, 1});
    }
    CHECK(idx.equals_bruteforce());
    auto c = idx.query();
    REQUIRE(c.has_value());
    // result satisfies the full semi-mergeable shape
    CHECK(c->size() >= prm.s1 / 2);
    CHECK(c->size() <= prm.s2);
    VertexSet bd_c = boundary(idx.mirror(), *c).boundary;
    CHECK(bd_c.size() <= prm.k);
    for (const auto& comp : internal_components(idx.mirror(), *c))
        CHECK(boundary(idx.mirror(), comp).boundary == bd_c);
}

TEST_CASE("index equals brute force across random update streams") {
    Rng rng(123);
    ChipParams prm{2, 5, 2};
    for (int round = 0; round < 6; ++round) {
        ChipIndex idx(prm, round % 2 == 0 ? always_true() : parity_oracle());
        drive_random(idx, rng, 40, 8);
    }
}

TEST_CASE("chip count stays linear in the edge count") {
    Rng rng(5);
    ChipParams prm{2, 4, 2};
    ChipIndex idx(prm, always_true());
    for (int v = 0; v < 10; ++v) idx.on_add_vertex(v);
    EdgeId next = 0;
    for (int i = 0; i < 11; ++i) {
        std::vector<VertexId> pick{static_cast<VertexId>(rng.below(10)),
                                   static_cast<VertexId>(rng.below(10))};
        if (pick[0] == pick[1]) pick.pop_back();
        idx.on_add_hyperedge(next++, pick);
        // generous constant for fixed (s2, k)
        CHECK(idx.chip_count() <= 40 * idx.mirror().num_edges() + 10);
    }
    CHECK(idx.equals_bruteforce());
}

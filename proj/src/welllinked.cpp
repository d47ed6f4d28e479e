#include "dynkern/welllinked.hpp"

#include <algorithm>
#include <cstring>
#include <queue>

namespace dynkern {

namespace {

// Unit-vertex-capacity flow network via vertex splitting: node 2i = v_in,
// 2i+1 = v_out; split arcs have capacity 1, all other arcs are effectively
// infinite, so a minimum cut consists of split arcs only.
struct FlowNet {
    struct Arc {
        int to;
        int cap;
        int rev;
    };
    std::vector<std::vector<Arc>> adj;
    int n = 0;

    explicit FlowNet(int nodes) : adj(nodes), n(nodes) {}

    void add_arc(int from, int to, int cap) {
        adj[from].push_back({to, cap, static_cast<int>(adj[to].size())});
        adj[to].push_back({from, 0, static_cast<int>(adj[from].size()) - 1});
    }

    bool bfs_augment(int s, int t) {
        std::vector<int> prev_node(n, -1), prev_arc(n, -1);
        std::queue<int> q;
        q.push(s);
        prev_node[s] = s;
        while (!q.empty() && prev_node[t] == -1) {
            int u = q.front();
            q.pop();
            for (std::size_t i = 0; i < adj[u].size(); ++i) {
                const Arc& a = adj[u][i];
                if (a.cap > 0 && prev_node[a.to] == -1) {
                    prev_node[a.to] = u;
                    prev_arc[a.to] = static_cast<int>(i);
                    q.push(a.to);
                }
            }
        }
        if (prev_node[t] == -1) return false;
        for (int v = t; v != s;) {
            int u = prev_node[v];
            Arc& a = adj[u][prev_arc[v]];
            a.cap -= 1;
            adj[v][a.rev].cap += 1;
            v = u;
        }
        return true;
    }

    std::vector<bool> residual_reachable(int s) const {
        std::vector<bool> seen(n, false);
        std::queue<int> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (const Arc& a : adj[u])
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = true;
                    q.push(a.to);
                }
        }
        return seen;
    }
};

constexpr int kBig = 1 << 28;

} // namespace

std::size_t max_vertex_disjoint_paths(const Graph& g, const VertexSet& b1, const VertexSet& b2,
                                      VertexSet* cut) {
    std::vector<VertexId> verts = g.vertices();
    std::map<VertexId, int> idx;
    for (std::size_t i = 0; i < verts.size(); ++i) idx[verts[i]] = static_cast<int>(i);
    int n = static_cast<int>(verts.size());
    int source = 2 * n, sink = 2 * n + 1;
    FlowNet net(2 * n + 2);
    for (int i = 0; i < n; ++i) net.add_arc(2 * i, 2 * i + 1, 1);
    for (VertexId v : verts)
        for (VertexId w : g.neighbors(v))
            net.add_arc(2 * idx[v] + 1, 2 * idx[w], kBig);
    for (VertexId v : b1) {
        auto it = idx.find(v);
        if (it != idx.end()) net.add_arc(source, 2 * it->second, kBig);
    }
    for (VertexId v : b2) {
        auto it = idx.find(v);
        if (it != idx.end()) net.add_arc(2 * it->second + 1, sink, kBig);
    }
    std::size_t flow = 0;
    while (flow < b1.size() + 1 && net.bfs_augment(source, sink)) ++flow;
    if (cut) {
        cut->clear();
        std::vector<bool> reach = net.residual_reachable(source);
        for (int i = 0; i < n; ++i)
            if (reach[2 * i] && !reach[2 * i + 1]) cut->insert(verts[i]);
    }
    return flow;
}

namespace {

// Enumerates equal-size subset pairs (B1, B2) of bd(A), running the flow
// check on each; returns the first failing pair, if any.
struct FailingPair {
    VertexSet b1, b2, cut;
};

std::optional<FailingPair> find_failing_pair(const Hypergraph& g, const HyperedgeSet& a,
                                             WlCounters* ctr) {
    BoundaryResult br = boundary(g, a);
    std::vector<VertexId> bd(br.boundary.begin(), br.boundary.end());
    std::size_t k = bd.size();
    if (k <= 0) return std::nullopt;
    if (k > 24) throw SizeLimitExceeded("is_well_linked: boundary too large for pair enumeration");
    Graph primal = primal_graph(g, a);
    std::vector<std::vector<std::uint32_t>> by_size(k + 1);
    for (std::uint32_t m = 1; m < (1u << k); ++m)
        by_size[__builtin_popcount(m)].push_back(m);
    for (std::size_t s = 1; s <= k; ++s) {
        for (std::uint32_t m1 : by_size[s]) {
            for (std::uint32_t m2 : by_size[s]) {
                if (m1 == m2) continue; // identical sets are trivially linked
                VertexSet b1, b2;
                for (std::size_t i = 0; i < k; ++i) {
                    if (m1 & (1u << i)) b1.insert(bd[i]);
                    if (m2 & (1u << i)) b2.insert(bd[i]);
                }
                VertexSet cut;
                if (ctr) {
                    ++ctr->pairs_checked;
                    ++ctr->flow_calls;
                }
                std::size_t flow = max_vertex_disjoint_paths(primal, b1, b2, &cut);
                if (flow < s) return FailingPair{std::move(b1), std::move(b2), std::move(cut)};
            }
        }
    }
    return std::nullopt;
}

} // namespace

bool is_well_linked(const Hypergraph& g, const HyperedgeSet& a, WlCounters* ctr) {
    if (a.empty()) throw PreconditionError("is_well_linked: empty set");
    if (a.size() == 1) return true;
    return !find_failing_pair(g, a, ctr).has_value();
}

WellLinkedVerdict well_linked_witness(const Hypergraph& g, const HyperedgeSet& b,
                                      WlCounters* ctr) {
    if (b.empty()) throw PreconditionError("well_linked_witness: empty set");
    WellLinkedVerdict verdict;
    if (b.size() == 1) {
        verdict.well_linked = true;
        return verdict;
    }
    auto failing = find_failing_pair(g, b, ctr);
    if (!failing) {
        verdict.well_linked = true;
        return verdict;
    }
    verdict.well_linked = false;
    const VertexSet& cut = failing->cut;

    // Flood from B1 \ cut in the primal graph minus the cut; every hyperedge's
    // non-cut vertices land in a single component.
    Graph primal = primal_graph(g, b);
    VertexSet reach;
    std::queue<VertexId> q;
    for (VertexId v : failing->b1)
        if (!cut.count(v)) {
            if (reach.insert(v).second) q.push(v);
        }
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (VertexId w : primal.neighbors(v))
            if (!cut.count(w) && reach.insert(w).second) q.push(w);
    }

    HyperedgeSet cut_only;
    for (EdgeId e : b) {
        bool any_non_cut = false, in_reach = false;
        for (VertexId v : g.edge_vertices(e)) {
            if (!cut.count(v)) {
                any_non_cut = true;
                if (reach.count(v)) in_reach = true;
            }
        }
        if (!any_non_cut) {
            cut_only.insert(e);
        } else if (in_reach) {
            verdict.b1.insert(e);
        } else {
            verdict.b2.insert(e);
        }
    }
    // Tie-break: cut-only edges go to the side minimizing the larger lambda,
    // ties to b1.
    for (EdgeId e : cut_only) {
        HyperedgeSet c1 = verdict.b1, c2 = verdict.b2;
        c1.insert(e);
        std::size_t with1 = std::max(lambda(g, c1), lambda(g, verdict.b2));
        c2.insert(e);
        std::size_t with2 = std::max(lambda(g, verdict.b1), lambda(g, c2));
        if (with1 <= with2)
            verdict.b1.insert(e);
        else
            verdict.b2.insert(e);
    }
    if (verdict.b1.empty() || verdict.b2.empty())
        throw InvariantViolation("well_linked_witness: degenerate bipartition");
    std::size_t lb = lambda(g, b);
    if (lambda(g, verdict.b1) >= lb || lambda(g, verdict.b2) >= lb)
        throw InvariantViolation("well_linked_witness: witness sides not strictly smaller");
    return verdict;
}

std::vector<HyperedgeSet> partition_well_linked(const Hypergraph& g, const HyperedgeSet& b,
                                                WlCounters* ctr) {
    if (b.empty()) throw PreconditionError("partition_well_linked: empty set");
    std::vector<HyperedgeSet> parts{b};
    std::size_t budget = std::size_t(1) << std::min<std::size_t>(lambda(g, b), 30);
    std::size_t i = 0;
    while (i < parts.size()) {
        if (parts.size() > budget)
            throw InvariantViolation("partition_well_linked: part count exceeds 2^lambda");
        WellLinkedVerdict v = well_linked_witness(g, parts[i], ctr);
        if (v.well_linked) {
            ++i;
        } else {
            parts[i] = std::move(v.b1);
            parts.push_back(std::move(v.b2));
        }
    }
    return parts;
}

bool is_well_linked_bruteforce(const Hypergraph& g, const HyperedgeSet& a) {
    if (a.empty()) throw PreconditionError("is_well_linked_bruteforce: empty set");
    std::vector<EdgeId> es(a.begin(), a.end());
    std::size_t n = es.size();
    if (n == 1) return true;
    if (n > 24) throw SizeLimitExceeded("is_well_linked_bruteforce: too many edges");
    std::size_t la = lambda(g, a);
    for (std::uint64_t m = 1; m + 1 < (1ull << n); ++m) {
        HyperedgeSet a1, a2;
        for (std::size_t i = 0; i < n; ++i)
            (m & (1ull << i) ? a1 : a2).insert(es[i]);
        if (lambda(g, a1) < la && lambda(g, a2) < la) return false;
    }
    return true;
}

std::size_t well_linked_number(const Hypergraph& g, const HyperedgeSet& es,
                               std::size_t max_edges) {
    if (es.size() > max_edges)
        throw SizeLimitExceeded("well_linked_number: edge set too large");
    std::vector<EdgeId> v(es.begin(), es.end());
    std::size_t n = v.size();
    std::size_t best = 0;
    for (std::uint64_t m = 1; m < (1ull << n); ++m) {
        HyperedgeSet a;
        for (std::size_t i = 0; i < n; ++i)
            if (m & (1ull << i)) a.insert(v[i]);
        std::size_t la = lambda(g, a);
        if (la <= best) continue;
        if (is_well_linked_bruteforce(g, a)) best = la;
    }
    return best;
}

} // namespace dynkern

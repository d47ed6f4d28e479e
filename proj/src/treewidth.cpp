#include "dynkern/treewidth.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>
#include <vector>

namespace dynkern {

namespace {

std::vector<std::vector<VertexId>> connected_components(const Graph& g) {
    std::vector<std::vector<VertexId>> comps;
    std::set<VertexId> seen;
    for (VertexId v : g.vertices()) {
        if (seen.count(v)) continue;
        std::vector<VertexId> comp, stack{v};
        seen.insert(v);
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            comp.push_back(u);
            for (VertexId w : g.neighbors(u))
                if (seen.insert(w).second) stack.push_back(w);
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Bitmask adjacency for one small component.
struct BitGraph {
    int n;
    std::vector<std::uint32_t> adj;

    BitGraph(const Graph& g, const std::vector<VertexId>& verts) : n(static_cast<int>(verts.size())), adj(n, 0) {
        std::map<VertexId, int> idx;
        for (int i = 0; i < n; ++i) idx[verts[i]] = i;
        for (int i = 0; i < n; ++i)
            for (VertexId w : g.neighbors(verts[i])) {
                auto it = idx.find(w);
                if (it != idx.end()) adj[i] |= 1u << it->second;
            }
    }

    // Q(S, v): vertices outside S reachable from v through internal vertices
    // in S; v itself excluded.
    std::uint32_t q_set(std::uint32_t smask, int v) const {
        std::uint32_t seen = 1u << v;
        std::uint32_t result = 0;
        std::uint32_t frontier = adj[v] & ~seen;
        while (frontier) {
            seen |= frontier;
            result |= frontier & ~smask;
            std::uint32_t inside = frontier & smask;
            std::uint32_t nxt = 0;
            while (inside) {
                int w = __builtin_ctz(inside);
                inside &= inside - 1;
                nxt |= adj[w];
            }
            frontier = nxt & ~seen;
        }
        return result & ~(1u << v);
    }

    bool is_clique(std::uint32_t mask) const {
        std::uint32_t m = mask;
        while (m) {
            int v = __builtin_ctz(m);
            m &= m - 1;
            if ((mask & ~(1u << v) & ~adj[v]) != 0) return false;
        }
        return true;
    }
};

// Decision: can the whole component be eliminated with every Q-set of size
// <= k?  Memoizes dead states; eliminates simplicial vertices greedily.
bool eliminable(const BitGraph& bg, int k, std::uint32_t smask,
                std::unordered_set<std::uint32_t>& dead) {
    std::uint32_t full = (bg.n == 32) ? ~0u : ((1u << bg.n) - 1);
    while (true) {
        if (smask == full) return true;
        bool progressed = false;
        std::uint32_t rest = full & ~smask;
        std::uint32_t m = rest;
        while (m) {
            int v = __builtin_ctz(m);
            m &= m - 1;
            std::uint32_t q = bg.q_set(smask, v);
            int qs = __builtin_popcount(q);
            if (qs <= k && (qs <= 1 || bg.is_clique(q))) {
                smask |= 1u << v;
                progressed = true;
                break;
            }
        }
        if (!progressed) break;
    }
    if (smask == full) return true;
    if (dead.count(smask)) return false;
    std::uint32_t rest = full & ~smask;
    std::vector<std::pair<int, int>> cands;
    std::uint32_t m = rest;
    while (m) {
        int v = __builtin_ctz(m);
        m &= m - 1;
        int qs = __builtin_popcount(bg.q_set(smask, v));
        if (qs <= k) cands.push_back({qs, v});
    }
    std::sort(cands.begin(), cands.end());
    for (auto [qs, v] : cands) {
        (void)qs;
        if (eliminable(bg, k, smask | (1u << v), dead)) return true;
    }
    dead.insert(smask);
    return false;
}

int component_treewidth(const Graph& g, const std::vector<VertexId>& verts,
                        std::size_t max_component) {
    int n = static_cast<int>(verts.size());
    if (n == 1) return 0;
    Graph sub = induced_subgraph(g, std::set<VertexId>(verts.begin(), verts.end()));
    if (is_forest(sub)) return sub.num_edges() == 0 ? 0 : 1;
    if (treewidth_at_most_2(sub)) return 2;
    if (static_cast<std::size_t>(n) > max_component)
        throw SizeLimitExceeded("exact_treewidth: component too large");
    if (n > 30) throw SizeLimitExceeded("exact_treewidth: component exceeds bitmask width");
    BitGraph bg(sub, verts);
    int lo = std::max(3, treewidth_lower_bound_mmd(sub));
    int hi = treewidth_upper_bound_minfill(sub);
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        std::unordered_set<std::uint32_t> dead;
        if (eliminable(bg, mid, 0, dead))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

} // namespace

bool is_forest(const Graph& g) {
    // Acyclic iff every component has |E| = |V| - 1; equivalently no cycle by DFS.
    std::set<VertexId> seen;
    for (VertexId s : g.vertices()) {
        if (seen.count(s)) continue;
        std::vector<std::pair<VertexId, VertexId>> stack{{s, s}};
        seen.insert(s);
        while (!stack.empty()) {
            auto [v, parent] = stack.back();
            stack.pop_back();
            bool skipped_parent = false;
            for (VertexId w : g.neighbors(v)) {
                if (w == parent && !skipped_parent) {
                    skipped_parent = true;
                    continue;
                }
                if (!seen.insert(w).second) return false;
                stack.push_back({w, v});
            }
        }
    }
    return true;
}

bool treewidth_at_most_2(const Graph& g) {
    Graph h = g;
    bool progress = true;
    while (progress && h.num_vertices() > 0) {
        progress = false;
        for (VertexId v : h.vertices()) {
            std::size_t d = h.degree(v);
            if (d <= 1) {
                std::vector<VertexId> ns(h.neighbors(v).begin(), h.neighbors(v).end());
                for (VertexId w : ns) h.delete_edge(v, w);
                h.delete_vertex(v);
                progress = true;
            } else if (d == 2) {
                std::vector<VertexId> ns(h.neighbors(v).begin(), h.neighbors(v).end());
                h.delete_edge(v, ns[0]);
                h.delete_edge(v, ns[1]);
                h.delete_vertex(v);
                if (!h.has_edge(ns[0], ns[1])) h.add_edge(ns[0], ns[1]);
                progress = true;
            }
        }
    }
    return h.num_vertices() == 0;
}

int exact_treewidth(const Graph& g, std::size_t max_component) {
    if (g.num_vertices() == 0) return -1;
    int tw = 0;
    for (const auto& comp : connected_components(g))
        tw = std::max(tw, component_treewidth(g, comp, max_component));
    return tw;
}

bool treewidth_at_most(const Graph& g, int k, std::size_t max_component) {
    if (g.num_vertices() == 0) return true;
    if (k < 0) return false;
    for (const auto& comp : connected_components(g)) {
        if (comp.size() == 1) continue;
        Graph sub = induced_subgraph(g, std::set<VertexId>(comp.begin(), comp.end()));
        if (sub.num_edges() == 0) continue;
        if (k >= 1 && is_forest(sub)) continue;
        if (k == 1) return false;
        if (k >= 2 && treewidth_at_most_2(sub)) continue;
        if (k == 2) return false;
        if (comp.size() > max_component)
            throw SizeLimitExceeded("treewidth_at_most: component too large");
        if (treewidth_upper_bound_minfill(sub) <= k) continue;
        if (treewidth_lower_bound_mmd(sub) > k) return false;
        BitGraph bg(sub, comp);
        std::unordered_set<std::uint32_t> dead;
        if (!eliminable(bg, k, 0, dead)) return false;
    }
    return true;
}

int treewidth_elimination_bruteforce(const Graph& g) {
    if (g.num_vertices() == 0) return -1;
    std::vector<VertexId> verts = g.vertices();
    int n = static_cast<int>(verts.size());
    if (n > 8) throw SizeLimitExceeded("treewidth_elimination_bruteforce: n > 8");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint32_t> base(n, 0);
    std::map<VertexId, int> idx;
    for (int i = 0; i < n; ++i) idx[verts[i]] = i;
    for (int i = 0; i < n; ++i)
        for (VertexId w : g.neighbors(verts[i])) base[i] |= 1u << idx[w];
    int best = n - 1;
    do {
        std::vector<std::uint32_t> adj = base;
        int width = 0;
        std::uint32_t gone = 0;
        for (int v : perm) {
            std::uint32_t nb = adj[v] & ~gone;
            width = std::max(width, __builtin_popcount(nb));
            if (width >= best) break;
            std::uint32_t m = nb;
            while (m) {
                int a = __builtin_ctz(m);
                m &= m - 1;
                adj[a] |= nb & ~(1u << a);
            }
            gone |= 1u << v;
        }
        best = std::min(best, width);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

int treewidth_upper_bound_minfill(const Graph& g) {
    if (g.num_vertices() == 0) return -1;
    std::map<VertexId, std::set<VertexId>> adj;
    for (VertexId v : g.vertices()) adj[v] = g.neighbors(v);
    int width = 0;
    while (!adj.empty()) {
        VertexId best = adj.begin()->first;
        long best_fill = -1;
        for (const auto& [v, ns] : adj) {
            long fill = 0;
            for (auto it = ns.begin(); it != ns.end(); ++it)
                for (auto jt = std::next(it); jt != ns.end(); ++jt)
                    if (!adj[*it].count(*jt)) ++fill;
            if (best_fill < 0 || fill < best_fill ||
                (fill == best_fill && ns.size() < adj[best].size())) {
                best_fill = fill;
                best = v;
            }
        }
        auto& ns = adj[best];
        width = std::max(width, static_cast<int>(ns.size()));
        for (auto it = ns.begin(); it != ns.end(); ++it)
            for (auto jt = std::next(it); jt != ns.end(); ++jt) {
                adj[*it].insert(*jt);
                adj[*jt].insert(*it);
            }
        for (VertexId w : ns) adj[w].erase(best);
        adj.erase(best);
    }
    return width;
}

int treewidth_lower_bound_mmd(const Graph& g) {
    if (g.num_vertices() == 0) return -1;
    std::map<VertexId, std::set<VertexId>> adj;
    for (VertexId v : g.vertices()) adj[v] = g.neighbors(v);
    int lb = 0;
    while (!adj.empty()) {
        VertexId best = adj.begin()->first;
        for (const auto& [v, ns] : adj)
            if (ns.size() < adj[best].size()) best = v;
        lb = std::max(lb, static_cast<int>(adj[best].size()));
        for (VertexId w : adj[best]) adj[w].erase(best);
        adj.erase(best);
    }
    return lb;
}

} // namespace dynkern

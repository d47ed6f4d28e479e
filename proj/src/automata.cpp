#include "dynkern/automata.hpp"

#include <algorithm>

namespace dynkern {

namespace {

std::size_t pos_of(const std::vector<VertexId>& sorted, VertexId v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    if (it == sorted.end() || *it != v) throw PreconditionError("fold: vertex not in working set");
    return static_cast<std::size_t>(it - sorted.begin());
}

} // namespace

TableState fold_tables(Plugin plugin, const std::vector<VertexId>& initial_verts,
                       const std::vector<FoldChild>& children, const std::set<GEdge>& local_edges,
                       const std::vector<VertexId>& out_boundary, std::size_t width_cap,
                       std::uint64_t* work) {
    TableState res;
    // vertices needed strictly after child i: adhesions of later children,
    // the out boundary, and unapplied local edge endpoints
    std::vector<VertexSet> needed_after(children.size() + 1);
    VertexSet tail(out_boundary.begin(), out_boundary.end());
    needed_after[children.size()] = tail;
    for (std::size_t i = children.size(); i-- > 0;) {
        VertexSet s = needed_after[i + 1];
        for (VertexId v : children[i].adhesion) s.insert(v);
        needed_after[i] = std::move(s);
    }

    ProblemTable work_tb = ProblemTable::empty(plugin);
    std::vector<VertexId> w; // sorted working set
    long long shift = 0;
    std::set<GEdge> pending = local_edges;

    auto intro = [&](VertexId v) -> bool {
        auto it = std::lower_bound(w.begin(), w.end(), v);
        if (it != w.end() && *it == v) return true;
        if (w.size() + 1 > width_cap) return false;
        std::size_t pos = static_cast<std::size_t>(it - w.begin());
        work_tb = table_introduce(work_tb, pos);
        w.insert(it, v);
        if (work) *work += work_tb.size();
        return true;
    };
    auto apply_ready_edges = [&]() {
        for (auto it = pending.begin(); it != pending.end();) {
            bool has_u = std::binary_search(w.begin(), w.end(), it->u);
            bool has_v = std::binary_search(w.begin(), w.end(), it->v);
            if (has_u && has_v) {
                work_tb = table_apply_edge(work_tb, pos_of(w, it->u), pos_of(w, it->v));
                if (work) *work += work_tb.size();
                it = pending.erase(it);
            } else {
                ++it;
            }
        }
    };
    auto forget_unneeded = [&](const VertexSet& needed) {
        for (std::size_t i = w.size(); i-- > 0;) {
            VertexId v = w[i];
            if (needed.count(v)) continue;
            bool pending_use = false;
            for (const GEdge& e : pending)
                if (e.u == v || e.v == v) pending_use = true;
            if (pending_use) continue;
            work_tb = table_forget(work_tb, i);
            w.erase(w.begin() + i);
            if (work) *work += work_tb.size();
        }
    };

    for (VertexId v : initial_verts)
        if (!intro(v)) return TableState{true, {}, 0};
    apply_ready_edges();
    forget_unneeded(needed_after[0]);

    for (std::size_t i = 0; i < children.size(); ++i) {
        const FoldChild& ch = children[i];
        if (ch.state->null) return TableState{true, {}, 0};
        for (VertexId v : ch.adhesion)
            if (!intro(v)) return TableState{true, {}, 0};
        std::vector<std::size_t> sub_to_big;
        for (VertexId v : ch.adhesion) sub_to_big.push_back(pos_of(w, v));
        work_tb = table_join(work_tb, ch.state->table, sub_to_big);
        shift += ch.state->shift;
        if (work) *work += work_tb.size() * std::max<std::size_t>(ch.state->table.size(), 1);
        apply_ready_edges();
        forget_unneeded(needed_after[i + 1]);
    }
    if (!pending.empty())
        throw InvariantViolation("fold: local edges with endpoints outside the node");
    forget_unneeded(VertexSet(out_boundary.begin(), out_boundary.end()));
    if (w != out_boundary)
        throw InvariantViolation("fold: working set does not match the out boundary");
    res.null = false;
    res.shift = shift + work_tb.normalize();
    res.table = std::move(work_tb);
    return res;
}

TableState PluginRun::compute_state(const SuperbranchDecomp& d, NodeId t) const {
    const auto& n = d.node(t);
    if (n.is_leaf()) {
        std::vector<VertexId> verts = d.support().edge_vertices(n.leaf_edge);
        return fold_tables(plugin_, verts, {}, n.edges, n.adhesion, width_cap_, &work_);
    }
    std::vector<FoldChild> children;
    children.reserve(n.children.size());
    for (NodeId c : n.children) {
        auto it = states_.find(c);
        if (it == states_.end()) throw InvariantViolation("plugin run: missing child state");
        children.push_back({d.node(c).adhesion, &it->second});
    }
    return fold_tables(plugin_, {}, children, n.edges, n.adhesion, width_cap_, &work_);
}

void PluginRun::compute_run(const SuperbranchDecomp& d) {
    states_.clear();
    std::vector<std::pair<std::size_t, NodeId>> order;
    for (NodeId t : d.subtree_nodes(d.root()))
        if (t != d.root()) order.push_back({d.depth(t), t});
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [dep, t] : order) {
        (void)dep;
        states_[t] = compute_state(d, t);
    }
}

void PluginRun::repair_run(const SuperbranchDecomp& d, const std::set<NodeId>& dirty) {
    // dead states are pruned lazily; node ids are never reused, so stale
    // entries are unreachable and only cost memory until the next prune
    if (states_.size() > 64 + 4 * d.subtree_nodes(d.root()).size()) forget_dead(d);
    std::vector<std::pair<std::size_t, NodeId>> order;
    for (NodeId t : dirty) {
        if (t == d.root() || !d.alive(t)) continue;
        order.push_back({d.depth(t), t});
    }
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [dep, t] : order) {
        (void)dep;
        TableState ns = compute_state(d, t);
        states_[t] = std::move(ns);
        // equality-based early stopping is possible here when the parent is
        // not already dirty; the trace always contains all ancestors, so the
        // recomputation cost is bounded by it either way
    }
}

const TableState& PluginRun::state_of(NodeId t) const {
    auto it = states_.find(t);
    if (it == states_.end()) throw InvariantViolation("plugin run: no state for node");
    return it->second;
}

void PluginRun::forget_dead(const SuperbranchDecomp& d) {
    for (auto it = states_.begin(); it != states_.end();)
        if (!d.alive(it->first))
            it = states_.erase(it);
        else
            ++it;
}

bool PluginRun::equals_recompute(const SuperbranchDecomp& d) const {
    PluginRun fresh(plugin_, width_cap_);
    fresh.compute_run(d);
    for (const auto& [t, st] : fresh.states_) {
        auto it = states_.find(t);
        if (it == states_.end() || !(it->second == st)) return false;
    }
    return true;
}

TableState prefix_assemble(Plugin plugin, const SuperbranchDecomp& d, const PluginRun& run,
                           const HyperedgeSet& s, std::size_t width_cap) {
    const auto& rn = d.node(d.root());
    std::vector<FoldChild> children;
    VertexSet all_verts;
    for (EdgeId te : s) {
        NodeId c = rn.torso_to_nbr.at(te);
        children.push_back({d.node(c).adhesion, &run.state_of(c)});
        for (VertexId v : d.node(c).adhesion) all_verts.insert(v);
    }
    VertexSet bd = boundary(rn.torso, s).boundary;
    // chain-local edges live in edges(r): pairs over the adhesion union
    std::set<GEdge> local;
    std::vector<VertexId> av(all_verts.begin(), all_verts.end());
    for (std::size_t i = 0; i < av.size(); ++i)
        for (std::size_t j = i + 1; j < av.size(); ++j) {
            GEdge e(av[i], av[j]);
            if (d.root_el().count(e)) local.insert(e);
        }
    return fold_tables(plugin, {}, children, local, std::vector<VertexId>(bd.begin(), bd.end()),
                       width_cap);
}

Graph materialize_internal_graph(const SuperbranchDecomp& d, const HyperedgeSet& s,
                                 std::size_t materialize_cap) {
    const auto& rn = d.node(d.root());
    VertexSet bd = boundary(rn.torso, s).boundary;
    Graph g;
    std::size_t budget = materialize_cap;
    for (EdgeId te : s) {
        NodeId c = rn.torso_to_nbr.at(te);
        for (EdgeId he : d.leaf_edges_below(c)) {
            const auto& vs = d.support().edge_vertices(he);
            for (VertexId v : vs) {
                if (bd.count(v)) continue;
                if (!g.has_vertex(v)) {
                    if (budget == 0)
                        throw SizeLimitExceeded("materialize_internal_graph: cap exceeded");
                    --budget;
                    g.add_vertex(v);
                }
            }
            if (vs.size() == 2 && !bd.count(vs[0]) && !bd.count(vs[1]) &&
                !g.has_edge(vs[0], vs[1]))
                g.add_edge(vs[0], vs[1]);
        }
    }
    return g;
}

bool itw_decider(const SuperbranchDecomp& d, const HyperedgeSet& s, int omega,
                 std::size_t materialize_cap, std::size_t dp_cap) {
    if (s.empty()) return true;
    Graph internal = materialize_internal_graph(d, s, materialize_cap);
    if (internal.num_vertices() == 0) return true; // empty graph: tw = -1
    return treewidth_at_most(internal, omega, dp_cap);
}

} // namespace dynkern

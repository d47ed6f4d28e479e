#include "dynkern/kernel.hpp"

#include <algorithm>
#include <sstream>

namespace dynkern {

std::string KernelOp::to_line() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::AddVertex: os << "kv+ " << v; break;
        case Kind::DeleteVertex: os << "kv- " << v; break;
        case Kind::AddEdge: os << "ke+ " << e.u << " " << e.v; break;
        case Kind::DeleteEdge: os << "ke- " << e.u << " " << e.v; break;
        case Kind::Shift: os << "kd " << shift; break;
    }
    return os.str();
}

OperationSeq normalize_ops(const OperationSeq& seq) {
    // cancel AddHyperedge/DeleteHyperedge pairs on the same label
    std::map<EdgeId, std::size_t> added_at;
    std::vector<bool> drop(seq.ops.size(), false);
    for (std::size_t i = 0; i < seq.ops.size(); ++i) {
        const HgOp& op = seq.ops[i];
        if (op.kind == HgOp::Kind::AddHyperedge) {
            added_at[op.edge] = i;
        } else if (op.kind == HgOp::Kind::DeleteHyperedge) {
            auto it = added_at.find(op.edge);
            if (it != added_at.end()) {
                drop[it->second] = true;
                drop[i] = true;
                added_at.erase(it);
            }
        }
    }
    // cancel AddVertex/DeleteVertex pairs with no surviving reference between
    std::map<VertexId, std::size_t> vadded_at;
    for (std::size_t i = 0; i < seq.ops.size(); ++i) {
        if (drop[i]) continue;
        const HgOp& op = seq.ops[i];
        if (op.kind == HgOp::Kind::AddVertex) {
            vadded_at[op.vertex] = i;
        } else if (op.kind == HgOp::Kind::DeleteVertex) {
            auto it = vadded_at.find(op.vertex);
            if (it != vadded_at.end()) {
                bool referenced = false;
                for (std::size_t j = it->second + 1; j < i; ++j) {
                    if (drop[j]) continue;
                    const HgOp& mid = seq.ops[j];
                    if ((mid.kind == HgOp::Kind::AddHyperedge ||
                         mid.kind == HgOp::Kind::DeleteHyperedge) &&
                        std::find(mid.verts.begin(), mid.verts.end(), op.vertex) !=
                            mid.verts.end())
                        referenced = true;
                }
                if (!referenced) {
                    drop[it->second] = true;
                    drop[i] = true;
                }
                vadded_at.erase(it);
            }
        }
    }
    OperationSeq out;
    for (std::size_t i = 0; i < seq.ops.size(); ++i)
        if (!drop[i]) out.push(seq.ops[i]);
    return out;
}

void KernelState::kv_add(VertexId v, std::vector<KernelOp>* out) {
    if (++vref_[v] == 1) {
        k_.add_vertex(v);
        if (out) out->push_back({KernelOp::Kind::AddVertex, v, {}, 0});
    }
}

void KernelState::kv_del(VertexId v, std::vector<KernelOp>* out) {
    auto it = vref_.find(v);
    if (it == vref_.end() || it->second <= 0)
        throw InvariantViolation("kernel: vertex refcount underflow");
    if (--it->second == 0) {
        vref_.erase(it);
        k_.delete_vertex(v);
        if (out) out->push_back({KernelOp::Kind::DeleteVertex, v, {}, 0});
    }
}

void KernelState::ke_add(const GEdge& e, std::vector<KernelOp>* out) {
    if (++eref_[e] == 1) {
        k_.add_edge(e.u, e.v);
        if (out) out->push_back({KernelOp::Kind::AddEdge, 0, e, 0});
    }
}

void KernelState::ke_del(const GEdge& e, std::vector<KernelOp>* out) {
    auto it = eref_.find(e);
    if (it == eref_.end() || it->second <= 0)
        throw InvariantViolation("kernel: edge refcount underflow");
    if (--it->second == 0) {
        eref_.erase(it);
        k_.delete_edge(e.u, e.v);
        if (out) out->push_back({KernelOp::Kind::DeleteEdge, 0, e, 0});
    }
}

void KernelState::materialize_child(const SuperbranchDecomp& d, const PluginRun& run,
                                    EdgeId torso_edge, std::vector<KernelOp>* out) {
    const auto& rn = d.node(d.root());
    NodeId c = rn.torso_to_nbr.at(torso_edge);
    const std::vector<VertexId>& adh = d.node(c).adhesion;
    ChildMat mat;

    const TableState* st = run.has_state(c) ? &run.state_of(c) : nullptr;
    const RepEntry* rep = nullptr;
    if (st && !st->null && store_) rep = store_->lookup(st->table);
    long long delta_c = 0;
    if (rep) delta_c = st->shift - rep->shift;

    if (rep && delta_c >= 0) {
        // glue the representative: boundary label i maps to the i-th
        // adhesion vertex, interiors take fresh gadget ids
        mat.replaced = true;
        mat.delta_c = delta_c;
        std::map<VertexId, VertexId> remap;
        for (std::size_t i = 0; i < rep->graph.boundary.size(); ++i)
            remap[rep->graph.boundary[i]] = adh[i];
        for (VertexId v : rep->graph.graph.vertices()) {
            if (remap.count(v)) continue;
            remap[v] = next_gadget_++;
            mat.interior.push_back(remap[v]);
            kv_add(remap[v], out);
        }
        for (const GEdge& e : rep->graph.graph.edges()) {
            GEdge me(remap[e.u], remap[e.v]);
            mat.edges.push_back(me);
            ke_add(me, out);
        }
    } else {
        // verbatim: the child's subgraph minus edges owned by the root
        mat.replaced = false;
        mat.delta_c = 0;
        HyperedgeSet below = d.leaf_edges_below(c);
        VertexSet adh_set(adh.begin(), adh.end());
        VertexSet seen;
        for (EdgeId he : below) {
            for (VertexId v : d.support().edge_vertices(he)) {
                if (adh_set.count(v) || !seen.insert(v).second) continue;
                mat.interior.push_back(v);
                kv_add(v, out);
            }
        }
        for (EdgeId he : below) {
            const auto& vs = d.support().edge_vertices(he);
            if (vs.size() != 2) continue;
            GEdge ge(vs[0], vs[1]);
            if (d.root_el().count(ge)) continue; // owned by the root part
            mat.edges.push_back(ge);
            ke_add(ge, out);
        }
    }
    delta_ += mat.delta_c;
    children_[torso_edge] = std::move(mat);
}

void KernelState::remove_child(EdgeId torso_edge, std::vector<KernelOp>* out) {
    auto it = children_.find(torso_edge);
    if (it == children_.end()) throw InvariantViolation("kernel: removing unknown child");
    for (const GEdge& e : it->second.edges) ke_del(e, out);
    for (VertexId v : it->second.interior) kv_del(v, out);
    delta_ -= it->second.delta_c;
    children_.erase(it);
}

std::vector<KernelOp> KernelState::apply_change(const SuperbranchDecomp& d, const PluginRun& run,
                                                const OperationSeq& torso_ops,
                                                const std::vector<std::pair<GEdge, bool>>& edges_delta) {
    std::vector<KernelOp> out;
    long long delta_before = delta_;
    // net out chronological edges(r) events: inserts and removals of the
    // same edge within one update cancel
    std::map<GEdge, int> net;
    for (const auto& [e, ins] : edges_delta) net[e] += ins ? 1 : -1;
    // removals first
    for (const auto& [e, n] : net)
        if (n < 0) ke_del(e, &out);
    OperationSeq seq = normalize_ops(torso_ops);
    for (const HgOp& op : seq.ops) {
        switch (op.kind) {
            case HgOp::Kind::AddVertex:
                kv_add(op.vertex, &out);
                break;
            case HgOp::Kind::DeleteVertex:
                kv_del(op.vertex, &out);
                break;
            case HgOp::Kind::AddHyperedge:
                materialize_child(d, run, op.edge, &out);
                break;
            case HgOp::Kind::DeleteHyperedge:
                remove_child(op.edge, &out);
                break;
        }
    }
    // additions last
    for (const auto& [e, n] : net)
        if (n > 0) ke_add(e, &out);
    if (delta_ != delta_before) out.push_back({KernelOp::Kind::Shift, 0, {}, delta_});
    return out;
}

std::size_t KernelState::unreplaced_children() const {
    std::size_t n = 0;
    for (const auto& [te, mat] : children_) {
        (void)te;
        if (!mat.replaced) ++n;
    }
    return n;
}

std::size_t KernelState::replaced_children() const {
    return children_.size() - unreplaced_children();
}

std::string KernelState::signature() const {
    std::ostringstream os;
    os << "delta " << delta_ << "\n";
    // root part: real-id vertices and edges not owned by any child
    std::set<VertexId> gadget;
    for (const auto& [te, mat] : children_) {
        (void)te;
        for (VertexId v : mat.interior)
            if (v >= gadget_base_) gadget.insert(v);
    }
    os << "verts";
    for (VertexId v : k_.vertices())
        if (v < gadget_base_) os << " " << v;
    os << "\nedges";
    std::set<GEdge> child_edges;
    for (const auto& [te, mat] : children_) {
        (void)te;
        for (const GEdge& e : mat.edges) child_edges.insert(e);
    }
    for (const GEdge& e : k_.edges())
        if (e.u < gadget_base_ && e.v < gadget_base_ && !child_edges.count(e))
            os << " " << e.u << "-" << e.v;
    os << "\n";
    for (const auto& [te, mat] : children_) {
        os << "child " << te << (mat.replaced ? " rep" : " verbatim") << " dc " << mat.delta_c;
        std::map<VertexId, std::size_t> canon;
        std::vector<VertexId> interior = mat.interior;
        std::sort(interior.begin(), interior.end());
        for (std::size_t i = 0; i < interior.size(); ++i) canon[interior[i]] = i;
        os << " int " << interior.size() << " edges";
        std::vector<std::string> edge_strs;
        for (const GEdge& e : mat.edges) {
            std::ostringstream es;
            auto label = [&](VertexId v) -> std::string {
                auto it = canon.find(v);
                return it == canon.end() ? "b" + std::to_string(v)
                                         : "i" + std::to_string(it->second);
            };
            std::string a = label(e.u), b = label(e.v);
            if (b < a) std::swap(a, b);
            es << a << "~" << b;
            edge_strs.push_back(es.str());
        }
        std::sort(edge_strs.begin(), edge_strs.end());
        for (const auto& s : edge_strs) os << " " << s;
        os << "\n";
    }
    return os.str();
}

KernelState KernelState::assemble(const SuperbranchDecomp& d, const PluginRun& run, Plugin plugin,
                                  const RepresentativeStore* store, VertexId gadget_base) {
    KernelState ks(plugin, store, gadget_base);
    for (VertexId v : d.root_bag()) ks.kv_add(v, nullptr);
    const auto& rn = d.node(d.root());
    for (EdgeId te : rn.torso.edges()) ks.materialize_child(d, run, te, nullptr);
    for (const GEdge& e : d.root_el()) ks.ke_add(e, nullptr);
    return ks;
}

} // namespace dynkern

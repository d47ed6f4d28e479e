#include "dynkern/superbranch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dynkern {

namespace {

std::vector<VertexId> to_sorted_vec(const VertexSet& s) {
    return std::vector<VertexId>(s.begin(), s.end());
}

} // namespace

SuperbranchDecomp::SuperbranchDecomp() {
    root_ = next_node_++;
    nodes_[root_] = Node{};
}

const SuperbranchDecomp::Node& SuperbranchDecomp::node(NodeId t) const {
    auto it = nodes_.find(t);
    if (it == nodes_.end()) throw PreconditionError("superbranch: no such node");
    return it->second;
}

SuperbranchDecomp::Node& SuperbranchDecomp::mut(NodeId t) {
    auto it = nodes_.find(t);
    if (it == nodes_.end()) throw PreconditionError("superbranch: no such node");
    return it->second;
}

NodeId SuperbranchDecomp::leaf_of(EdgeId e) const {
    auto it = leaf_of_.find(e);
    if (it == leaf_of_.end()) throw MissingEdge("superbranch: no leaf for hyperedge");
    return it->second;
}

std::size_t SuperbranchDecomp::depth(NodeId t) const {
    std::size_t d = 0;
    while (node(t).parent != kNoNode) {
        t = node(t).parent;
        ++d;
    }
    return d;
}

std::size_t SuperbranchDecomp::subtree_depth(NodeId t) const {
    std::size_t best = 0;
    for (NodeId c : node(t).children) best = std::max(best, 1 + subtree_depth(c));
    return best;
}

HyperedgeSet SuperbranchDecomp::leaf_edges_below(NodeId t) const {
    HyperedgeSet out;
    std::vector<NodeId> stack{t};
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        const Node& n = node(u);
        if (n.is_leaf())
            out.insert(n.leaf_edge);
        else
            for (NodeId c : n.children) stack.push_back(c);
    }
    return out;
}

std::vector<NodeId> SuperbranchDecomp::subtree_nodes(NodeId t) const {
    std::vector<NodeId> out, stack{t};
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        out.push_back(u);
        for (NodeId c : node(u).children) stack.push_back(c);
    }
    return out;
}

NodeId SuperbranchDecomp::root_child_above(NodeId t) const {
    if (t == root_) throw PreconditionError("root_child_above: t is root");
    while (node(t).parent != root_) t = node(t).parent;
    return t;
}

double SuperbranchDecomp::phi_term(NodeId t) const {
    const Node& n = node(t);
    if (n.is_leaf() || n.children.empty() || n.leaf_count == 0) return 0.0;
    return (static_cast<double>(n.children.size()) - 1.0) *
           std::log2(static_cast<double>(n.leaf_count));
}

void SuperbranchDecomp::phi_remove(NodeId t) { potential_ -= phi_term(t); }
void SuperbranchDecomp::phi_add(NodeId t) { potential_ += phi_term(t); }

double SuperbranchDecomp::recompute_potential() const {
    double p = 0.0;
    for (const auto& [t, n] : nodes_) {
        (void)n;
        p += phi_term(t);
    }
    return p;
}

NodeId SuperbranchDecomp::new_node() {
    NodeId t = next_node_++;
    nodes_[t] = Node{};
    nodes_[t].stamp = ++stamp_counter_;
    return t;
}

void SuperbranchDecomp::destroy_node(NodeId t) {
    nodes_.erase(t);
    batch_touched_.erase(t);
}

void SuperbranchDecomp::bump_stamps_upwards(NodeId t) {
    while (t != kNoNode) {
        mut(t).stamp = ++stamp_counter_;
        t = node(t).parent;
    }
}

void SuperbranchDecomp::touch(NodeId t) {
    if (batch_open_) batch_touched_.insert(t);
}

void SuperbranchDecomp::record_root_op(HgOp op) {
    if (op.kind == HgOp::Kind::AddVertex) {
        root_bag_.insert(op.vertex);
        if (batch_open_) batch_.bag_root_delta.push_back({op.vertex, true});
    } else if (op.kind == HgOp::Kind::DeleteVertex) {
        root_bag_.erase(op.vertex);
        if (batch_open_) batch_.bag_root_delta.push_back({op.vertex, false});
    }
    if (batch_open_) batch_.root_torso_ops.push(std::move(op));
}

EdgeId SuperbranchDecomp::torso_add_edge(NodeId t, NodeId nbr, const std::vector<VertexId>& verts) {
    Node& n = mut(t);
    EdgeId te = n.torso.add_hyperedge(verts);
    n.torso_to_nbr[te] = nbr;
    n.nbr_to_torso[nbr] = te;
    if (t == root_) record_root_op(HgOp::add_hyperedge(te, verts));
    return te;
}

void SuperbranchDecomp::torso_delete_edge(NodeId t, EdgeId te) {
    Node& n = mut(t);
    std::vector<VertexId> verts = n.torso.edge_vertices(te);
    auto it = n.torso_to_nbr.find(te);
    if (it != n.torso_to_nbr.end()) {
        n.nbr_to_torso.erase(it->second);
        n.torso_to_nbr.erase(it);
    }
    n.torso.delete_hyperedge(te);
    if (t == root_) record_root_op(HgOp::delete_hyperedge(te, verts));
}

void SuperbranchDecomp::torso_add_vertex(NodeId t, VertexId v) {
    mut(t).torso.add_vertex(v);
    if (t == root_) record_root_op(HgOp::add_vertex(v));
}

void SuperbranchDecomp::torso_delete_vertex(NodeId t, VertexId v) {
    mut(t).torso.delete_vertex(v);
    if (t == root_) record_root_op(HgOp::delete_vertex(v));
}

std::set<GEdge> SuperbranchDecomp::root_contribution(NodeId child) const {
    // Edges of EL(child) whose endpoints both lie on the child's adhesion.
    const Node& c = node(child);
    VertexSet adh(c.adhesion.begin(), c.adhesion.end());
    std::set<GEdge> out;
    for (const GEdge& e : c.el)
        if (adh.count(e.u) && adh.count(e.v)) out.insert(e);
    return out;
}

void SuperbranchDecomp::root_el_insert(const GEdge& e) {
    if (root_el_.insert(e).second && batch_open_) batch_.edges_root_delta.push_back({e, true});
}

void SuperbranchDecomp::root_el_erase(const GEdge& e) {
    if (root_el_.erase(e) && batch_open_) batch_.edges_root_delta.push_back({e, false});
}

void SuperbranchDecomp::attach_root_contribution(NodeId child) {
    for (const GEdge& e : root_contribution(child)) root_el_insert(e);
    if (batch_open_) batch_edges_dirty_.insert(child);
}

void SuperbranchDecomp::detach_root_contribution(NodeId child) {
    for (const GEdge& e : root_contribution(child)) root_el_erase(e);
    if (batch_open_) batch_edges_dirty_.insert(child);
}

void SuperbranchDecomp::refresh_el_upwards(NodeId from) {
    // EL must stay current between rotations of one batch; root EL is
    // maintained incrementally by the contribution hooks.
    for (NodeId u = from; u != kNoNode && u != root_; u = node(u).parent)
        mut(u).el = recompute_el(u);
}

void SuperbranchDecomp::begin_batch() {
    if (batch_open_) throw PreconditionError("begin_batch: batch already open");
    batch_open_ = true;
    batch_ = BatchReport{};
    batch_touched_.clear();
}

BatchReport SuperbranchDecomp::finish_batch() {
    if (!batch_open_) throw PreconditionError("finish_batch: no open batch");
    refresh_annotations();
    batch_open_ = false;
    for (NodeId t : batch_touched_) {
        if (!alive(t)) continue;
        NodeId u = t;
        while (u != kNoNode) {
            batch_.trace.insert(u);
            u = node(u).parent;
        }
    }
    batch_touched_.clear();
    return std::move(batch_);
}

void SuperbranchDecomp::refresh_annotations() {
    // EL along the trace (ancestors of touched nodes), bottom-up; the root is
    // maintained incrementally.
    std::set<NodeId> trace;
    for (NodeId t : batch_touched_) {
        if (!alive(t)) continue;
        NodeId u = t;
        while (u != kNoNode) {
            if (!trace.insert(u).second) break;
            u = node(u).parent;
        }
    }
    std::vector<std::pair<std::size_t, NodeId>> order;
    for (NodeId t : trace)
        if (t != root_) order.push_back({depth(t), t});
    std::sort(order.begin(), order.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [d, t] : order) {
        (void)d;
        mut(t).el = recompute_el(t);
    }
    // edges(t) = EL(t) \ EL(parent), recomputed for trace nodes and their
    // children (the parent side may have changed under them). Untouched root
    // children are unaffected by construction.
    std::set<NodeId> need;
    for (const auto& [d, t] : order) {
        (void)d;
        need.insert(t);
        for (NodeId c : node(t).children) need.insert(c);
    }
    for (NodeId t : batch_edges_dirty_)
        if (alive(t)) need.insert(t);
    batch_edges_dirty_.clear();
    for (NodeId t : need) {
        if (t == root_) continue;
        Node& n = mut(t);
        const std::set<GEdge>& parent_el = n.parent == root_ ? root_el_ : node(n.parent).el;
        std::set<GEdge> ed;
        for (const GEdge& e : n.el)
            if (!parent_el.count(e)) ed.insert(e);
        n.edges = std::move(ed);
        if (batch_open_) batch_.edges_dirty.insert(t);
    }
}

std::set<GEdge> SuperbranchDecomp::recompute_el(NodeId t) const {
    const Node& n = node(t);
    std::set<GEdge> out;
    if (n.is_leaf()) {
        const auto& vs = n.leaf_verts;
        if (vs.size() == 2) out.insert(GEdge(vs[0], vs[1]));
        return out;
    }
    for (NodeId c : n.children) {
        const Node& cn = node(c);
        VertexSet adh(cn.adhesion.begin(), cn.adhesion.end());
        for (const GEdge& e : cn.el)
            if (adh.count(e.u) && adh.count(e.v)) out.insert(e);
    }
    return out;
}

VertexSet SuperbranchDecomp::recompute_adhesion(NodeId t) const {
    if (t == root_) return {};
    return boundary(support_, leaf_edges_below(t)).boundary;
}

std::vector<VertexId> SuperbranchDecomp::bag(NodeId t) const {
    const Node& n = node(t);
    if (n.is_leaf()) return support_.edge_vertices(n.leaf_edge);
    return n.torso.vertices();
}

// ---------------------------------------------------------------- contract

OperationSeq SuperbranchDecomp::contract_edge(NodeId t) {
    Node& tn = mut(t);
    if (tn.is_leaf()) throw PreconditionError("contract: t is a leaf");
    if (t == root_) throw PreconditionError("contract: t is the root");
    NodeId p = tn.parent;
    Node& pn = mut(p);

    std::size_t rot_size = std::max<std::size_t>(
        1, std::max<std::size_t>(support_.rank(), 1) * (tn.torso.num_edges() + 1));

    if (p == root_) detach_root_contribution(t);

    phi_remove(p);
    phi_remove(t);

    OperationSeq ops;
    EdgeId et = pn.nbr_to_torso.at(t);
    ops.push(HgOp::delete_hyperedge(et, pn.torso.edge_vertices(et)));
    torso_delete_edge(p, et);

    std::vector<NodeId> moved = mut(t).children;
    for (NodeId s : moved) {
        Node& sn = mut(s);
        for (VertexId v : sn.adhesion) {
            if (!mut(p).torso.has_vertex(v)) {
                ops.push(HgOp::add_vertex(v));
                torso_add_vertex(p, v);
            }
        }
        EdgeId ne = torso_add_edge(p, s, sn.adhesion);
        ops.push(HgOp::add_hyperedge(ne, sn.adhesion));
        if (!sn.is_leaf()) {
            EdgeId pe = sn.nbr_to_torso.at(t);
            sn.nbr_to_torso.erase(t);
            sn.nbr_to_torso[p] = pe;
            sn.torso_to_nbr[pe] = p;
        }
        sn.parent = p;
    }
    auto& pc = mut(p).children;
    pc.erase(std::remove(pc.begin(), pc.end(), t), pc.end());
    pc.insert(pc.end(), moved.begin(), moved.end());

    destroy_node(t);
    phi_add(p);

    if (p == root_)
        for (NodeId s : moved) attach_root_contribution(s);

    refresh_el_upwards(p);
    bump_stamps_upwards(p);
    touch(p);
    for (NodeId s : moved) touch(s);

    if (batch_open_) {
        Rotation r;
        r.kind = Rotation::Kind::Contract;
        r.node = t;
        r.size = rot_size;
        batch_.rotations.rots.push_back(std::move(r));
        batch_.work_units += rot_size;
    }
    return ops;
}

// ------------------------------------------------------------------- split

std::pair<NodeId, OperationSeq> SuperbranchDecomp::split(NodeId t, const HyperedgeSet& c) {
    {
        Node& tn = mut(t);
        if (tn.is_leaf()) throw PreconditionError("split: t is a leaf");
        if (c.size() < 2) throw PreconditionError("split: |C| < 2");
        if (tn.torso.num_edges() < c.size() + 2)
            throw PreconditionError("split: complement too small");
        NodeId tp = tn.parent;
        for (EdgeId e : c) {
            auto it = tn.torso_to_nbr.find(e);
            if (it == tn.torso_to_nbr.end()) throw PreconditionError("split: unknown torso edge");
            if (tp != kNoNode && it->second == tp)
                throw PreconditionError("split: parent edge in C");
        }
    }

    std::size_t rot_size =
        std::max<std::size_t>(1, std::max<std::size_t>(support_.rank(), 1) * c.size());

    BoundaryResult br = boundary(node(t).torso, c);
    std::vector<VertexId> bd_c = to_sorted_vec(br.boundary);

    phi_remove(t);

    NodeId w = new_node();
    mut(w).parent = t;

    std::vector<NodeId> moved;
    for (EdgeId e : c) moved.push_back(node(t).torso_to_nbr.at(e));
    if (t == root_)
        for (NodeId s : moved) detach_root_contribution(s);

    for (VertexId v : br.vertex_set) mut(w).torso.add_vertex(v);
    for (NodeId s : moved) {
        Node& sn = mut(s);
        EdgeId ne = mut(w).torso.add_hyperedge(sn.adhesion);
        mut(w).torso_to_nbr[ne] = s;
        mut(w).nbr_to_torso[s] = ne;
        if (!sn.is_leaf()) {
            EdgeId pe = sn.nbr_to_torso.at(t);
            sn.nbr_to_torso.erase(t);
            sn.nbr_to_torso[w] = pe;
            sn.torso_to_nbr[pe] = w;
        }
        sn.parent = w;
        mut(w).children.push_back(s);
        auto& tc = mut(t).children;
        tc.erase(std::remove(tc.begin(), tc.end(), s), tc.end());
    }
    {
        Node& wn = mut(w);
        wn.leaf_count = 0;
        for (NodeId s : moved) {
            const Node& sn = node(s);
            wn.leaf_count += sn.is_leaf() ? 1 : sn.leaf_count;
        }
        wn.adhesion = bd_c;
    }

    OperationSeq ops; // delta of torso(t)
    for (EdgeId e : c) {
        ops.push(HgOp::delete_hyperedge(e, mut(t).torso.edge_vertices(e)));
        torso_delete_edge(t, e);
    }
    EdgeId ew = torso_add_edge(t, w, bd_c);
    ops.push(HgOp::add_hyperedge(ew, bd_c));
    {
        Node& wn = mut(w);
        EdgeId ep = wn.torso.add_hyperedge(bd_c);
        wn.torso_to_nbr[ep] = t;
        wn.nbr_to_torso[t] = ep;
    }
    for (VertexId v : br.vertex_set) {
        if (mut(t).torso.has_vertex(v) && mut(t).torso.incident(v).empty()) {
            ops.push(HgOp::delete_vertex(v));
            torso_delete_vertex(t, v);
        }
    }

    mut(t).children.push_back(w);
    phi_add(t);
    phi_add(w);

    // EL(w) is needed immediately when t is the root (edges(r) delta).
    mut(w).el = recompute_el(w);
    if (t == root_) attach_root_contribution(w);

    refresh_el_upwards(w);
    bump_stamps_upwards(w);
    touch(t);
    touch(w);
    for (NodeId s : moved) touch(s);

    if (batch_open_) {
        Rotation r;
        r.kind = Rotation::Kind::Split;
        r.node = t;
        r.created = w;
        r.split_edges = c;
        r.size = rot_size;
        batch_.rotations.rots.push_back(std::move(r));
        batch_.work_units += rot_size;
    }
    return {w, ops};
}

// ------------------------------------------------------------- insert_leaf

std::pair<NodeId, OperationSeq> SuperbranchDecomp::insert_leaf(NodeId t,
                                                               const std::vector<VertexId>& everts,
                                                               const std::vector<NodeId>& x) {
    if (node(t).is_leaf()) throw PreconditionError("insert_leaf: t is a leaf");

    VertexSet covered;
    for (NodeId lx : x) {
        const Node& xn = node(lx);
        if (!xn.is_leaf() || xn.parent != t)
            throw PreconditionError("insert_leaf: X must be leaf-children of t");
        for (VertexId v : support_.edge_vertices(xn.leaf_edge)) covered.insert(v);
    }
    VertexSet old_verts;
    for (VertexId v : everts)
        if (support_.has_vertex(v)) old_verts.insert(v);
    for (VertexId v : old_verts)
        if (!covered.count(v))
            throw PreconditionError("insert_leaf: V(e) not covered by V(L(X))");

    std::size_t rot_size = std::max<std::size_t>(
        1, (x.size() * std::max<std::size_t>(support_.rank(), 1) + 1) * (everts.size() + 1) +
               depth(t) + 1);

    for (VertexId v : everts)
        if (!support_.has_vertex(v)) support_.add_vertex(v);
    EdgeId e = support_.add_hyperedge(everts);

    NodeId l = new_node();
    {
        Node& ln = mut(l);
        ln.parent = t;
        ln.leaf_edge = e;
        ln.leaf_verts = support_.edge_vertices(e);
        VertexSet adh_l;
        for (VertexId v : support_.edge_vertices(e))
            if (support_.incident(v).size() > 1) adh_l.insert(v);
        ln.adhesion = to_sorted_vec(adh_l);
    }
    leaf_of_[e] = l;

    std::vector<NodeId> path;
    for (NodeId u = t; u != kNoNode; u = node(u).parent) path.push_back(u);
    for (NodeId u : path) phi_remove(u);

    OperationSeq ops;
    for (VertexId v : node(l).adhesion) {
        if (!mut(t).torso.has_vertex(v)) {
            ops.push(HgOp::add_vertex(v));
            torso_add_vertex(t, v);
        }
    }
    for (NodeId lx : x) {
        Node& xn = mut(lx);
        VertexSet na;
        for (VertexId v : support_.edge_vertices(xn.leaf_edge))
            if (support_.incident(v).size() > 1) na.insert(v);
        std::vector<VertexId> new_adh = to_sorted_vec(na);
        if (new_adh != xn.adhesion) {
            if (t == root_) detach_root_contribution(lx);
            EdgeId old_te = mut(t).nbr_to_torso.at(lx);
            ops.push(HgOp::delete_hyperedge(old_te, mut(t).torso.edge_vertices(old_te)));
            torso_delete_edge(t, old_te);
            xn.adhesion = new_adh;
            EdgeId nte = torso_add_edge(t, lx, new_adh);
            ops.push(HgOp::add_hyperedge(nte, new_adh));
            if (t == root_) attach_root_contribution(lx);
        }
    }
    EdgeId te = torso_add_edge(t, l, node(l).adhesion);
    ops.push(HgOp::add_hyperedge(te, node(l).adhesion));

    mut(t).children.push_back(l);
    for (NodeId u : path) mut(u).leaf_count += 1;
    for (NodeId u : path) phi_add(u);

    mut(l).el = recompute_el(l);
    if (t == root_) attach_root_contribution(l);

    refresh_el_upwards(l);
    bump_stamps_upwards(l);
    touch(t);
    touch(l);

    if (batch_open_) {
        Rotation r;
        r.kind = Rotation::Kind::InsertLeaf;
        r.node = t;
        r.created = l;
        r.hyperedge = e;
        r.size = rot_size;
        batch_.rotations.rots.push_back(std::move(r));
        batch_.work_units += rot_size;
    }
    return {l, ops};
}

// ------------------------------------------------------------- delete_leaf

OperationSeq SuperbranchDecomp::delete_leaf(NodeId leaf) {
    if (!node(leaf).is_leaf()) throw PreconditionError("delete_leaf: not a leaf");
    NodeId t = node(leaf).parent;
    if (t != root_ && node(t).children.size() < 3)
        throw PreconditionError("delete_leaf: parent would drop below 2 children");

    VertexSet sibling_verts;
    for (NodeId c : node(t).children) {
        if (c == leaf) continue;
        const Node& cn = node(c);
        if (cn.is_leaf())
            for (VertexId v : support_.edge_vertices(cn.leaf_edge)) sibling_verts.insert(v);
    }
    for (VertexId v : node(leaf).adhesion)
        if (!sibling_verts.count(v))
            throw PreconditionError("delete_leaf: locality precondition violated");

    EdgeId e = node(leaf).leaf_edge;
    std::size_t rk = std::max<std::size_t>(support_.rank(), 1);
    std::size_t rot_size = std::max<std::size_t>(1, rk * rk + depth(t) + 1);

    if (t == root_) detach_root_contribution(leaf);

    EdgeId te = node(t).nbr_to_torso.at(leaf);
    std::vector<std::pair<NodeId, VertexId>> shrink;
    for (VertexId v : node(t).torso.edge_vertices(te)) {
        const auto& inc = node(t).torso.incident(v);
        if (inc.size() == 2) {
            EdgeId other = *inc.begin() == te ? *std::next(inc.begin()) : *inc.begin();
            shrink.push_back({node(t).torso_to_nbr.at(other), v});
        }
    }

    std::vector<NodeId> path;
    for (NodeId u = t; u != kNoNode; u = node(u).parent) path.push_back(u);
    for (NodeId u : path) phi_remove(u);

    OperationSeq ops;
    std::vector<VertexId> everts = node(t).torso.edge_vertices(te);
    ops.push(HgOp::delete_hyperedge(te, everts));
    torso_delete_edge(t, te);

    for (auto [s, v] : shrink) {
        Node& sn = mut(s);
        if (!sn.is_leaf())
            throw InvariantViolation("delete_leaf: non-leaf sibling adhesion would shrink");
        if (t == root_) detach_root_contribution(s);
        EdgeId old_te = mut(t).nbr_to_torso.at(s);
        std::vector<VertexId> nv;
        for (VertexId u : mut(t).torso.edge_vertices(old_te))
            if (u != v) nv.push_back(u);
        ops.push(HgOp::delete_hyperedge(old_te, mut(t).torso.edge_vertices(old_te)));
        torso_delete_edge(t, old_te);
        EdgeId nte = torso_add_edge(t, s, nv);
        ops.push(HgOp::add_hyperedge(nte, nv));
        sn.adhesion = nv;
        if (t == root_) attach_root_contribution(s);
    }
    for (VertexId v : everts) {
        if (mut(t).torso.has_vertex(v) && mut(t).torso.incident(v).empty()) {
            ops.push(HgOp::delete_vertex(v));
            torso_delete_vertex(t, v);
        }
    }

    auto& tc = mut(t).children;
    tc.erase(std::remove(tc.begin(), tc.end(), leaf), tc.end());
    leaf_of_.erase(e);
    support_.delete_hyperedge(e);
    destroy_node(leaf);

    for (NodeId u : path) mut(u).leaf_count -= 1;
    for (NodeId u : path) phi_add(u);

    refresh_el_upwards(t);
    bump_stamps_upwards(t);
    touch(t);

    if (batch_open_) {
        Rotation r;
        r.kind = Rotation::Kind::DeleteLeaf;
        r.node = leaf;
        r.size = rot_size;
        batch_.rotations.rots.push_back(std::move(r));
        batch_.work_units += rot_size;
    }
    return ops;
}

// ------------------------------------------------------------------- misc

SuperbranchDecomp SuperbranchDecomp::flat(const Hypergraph& h) {
    SuperbranchDecomp d;
    d.support_ = h;
    for (EdgeId e : h.edges()) {
        NodeId l = d.new_node();
        Node& ln = d.mut(l);
        ln.parent = d.root_;
        ln.leaf_edge = e;
        ln.leaf_verts = h.edge_vertices(e);
        VertexSet adh;
        for (VertexId v : h.edge_vertices(e))
            if (h.incident(v).size() > 1) adh.insert(v);
        ln.adhesion = to_sorted_vec(adh);
        d.leaf_of_[e] = l;
        Node& rn = d.mut(d.root_);
        rn.children.push_back(l);
        rn.leaf_count += 1;
        for (VertexId v : ln.adhesion)
            if (!rn.torso.has_vertex(v)) {
                rn.torso.add_vertex(v);
                d.root_bag_.insert(v);
            }
        EdgeId te = rn.torso.add_hyperedge(ln.adhesion);
        rn.torso_to_nbr[te] = l;
        rn.nbr_to_torso[l] = te;
        ln.el = d.recompute_el(l);
    }
    std::vector<NodeId> rc = d.node(d.root_).children;
    for (NodeId c : rc) d.attach_root_contribution(c);
    for (NodeId c : rc) {
        Node& cn = d.mut(c);
        std::set<GEdge> ed;
        for (const GEdge& e : cn.el)
            if (!d.root_el_.count(e)) ed.insert(e);
        cn.edges = std::move(ed);
    }
    d.potential_ = d.recompute_potential();
    return d;
}

std::string SuperbranchDecomp::dump() const {
    std::ostringstream os;
    std::vector<NodeId> stack{root_};
    while (!stack.empty()) {
        NodeId t = stack.back();
        stack.pop_back();
        const Node& n = node(t);
        os << "node " << t;
        if (n.parent != kNoNode) os << " parent " << n.parent;
        if (n.is_leaf()) os << " leaf e" << n.leaf_edge;
        os << " leaves " << (n.is_leaf() ? 1 : n.leaf_count);
        os << " adh";
        for (VertexId v : n.adhesion) os << " " << v;
        os << "\n";
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) stack.push_back(*it);
    }
    return os.str();
}

std::string SuperbranchDecomp::graphviz() const {
    std::ostringstream os;
    os << "digraph sbd {\n";
    std::map<NodeId, const Node*> ordered;
    for (const auto& [t, n] : nodes_) ordered[t] = &n;
    for (const auto& [t, np] : ordered) {
        const Node& n = *np;
        os << "  n" << t << " [label=\"" << t;
        if (n.is_leaf()) os << "\\ne" << n.leaf_edge;
        os << "\"];\n";
        for (NodeId c : n.children) os << "  n" << t << " -> n" << c << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace dynkern

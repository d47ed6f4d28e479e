#include "dynkern/hypergraph.hpp"

#include <sstream>

namespace dynkern {

Graph induced_subgraph(const Graph& g, const std::set<VertexId>& verts) {
    Graph out;
    for (VertexId v : verts)
        if (g.has_vertex(v)) out.ensure_vertex(v);
    for (VertexId v : verts) {
        if (!g.has_vertex(v)) continue;
        for (VertexId w : g.neighbors(v))
            if (v < w && verts.count(w)) out.add_edge(v, w);
    }
    return out;
}

void Hypergraph::add_vertex(VertexId v) {
    if (has_vertex(v)) throw DuplicateVertex("hypergraph add_vertex: vertex exists");
    vertex_inc_[v];
}

void Hypergraph::delete_vertex(VertexId v) {
    auto it = vertex_inc_.find(v);
    if (it == vertex_inc_.end()) throw MissingVertex("hypergraph delete_vertex: no such vertex");
    if (!it->second.empty()) throw NonIsolatedVertex("hypergraph delete_vertex: incident edges remain");
    vertex_inc_.erase(it);
}

EdgeId Hypergraph::add_hyperedge(const std::vector<VertexId>& verts) {
    EdgeId e = next_edge_id_;
    add_hyperedge_with_id(e, verts);
    return e;
}

void Hypergraph::add_hyperedge_with_id(EdgeId e, const std::vector<VertexId>& verts) {
    if (has_edge(e)) throw DuplicateEdge("hypergraph add_hyperedge: label in use");
    std::vector<VertexId> vs = verts;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (VertexId v : vs)
        if (!has_vertex(v)) throw MissingVertex("hypergraph add_hyperedge: missing vertex");
    for (VertexId v : vs) vertex_inc_[v].insert(e);
    rank_counts_[vs.size()]++;
    size_edges_ += vs.size() + 1;
    edge_verts_.emplace(e, std::move(vs));
    if (e >= next_edge_id_) next_edge_id_ = e + 1;
}

void Hypergraph::delete_hyperedge(EdgeId e) {
    auto it = edge_verts_.find(e);
    if (it == edge_verts_.end()) throw MissingEdge("hypergraph delete_hyperedge: no such edge");
    for (VertexId v : it->second) vertex_inc_[v].erase(e);
    auto rc = rank_counts_.find(it->second.size());
    if (--rc->second == 0) rank_counts_.erase(rc);
    size_edges_ -= it->second.size() + 1;
    edge_verts_.erase(it);
}

const std::vector<VertexId>& Hypergraph::edge_vertices(EdgeId e) const {
    auto it = edge_verts_.find(e);
    if (it == edge_verts_.end()) throw MissingEdge("edge_vertices: no such edge");
    return it->second;
}

const std::set<EdgeId>& Hypergraph::incident(VertexId v) const {
    auto it = vertex_inc_.find(v);
    if (it == vertex_inc_.end()) throw MissingVertex("incident: no such vertex");
    return it->second;
}

std::size_t Hypergraph::rank() const {
    if (rank_counts_.empty()) return 0;
    return rank_counts_.rbegin()->first;
}

std::vector<VertexId> Hypergraph::vertices() const {
    std::vector<VertexId> out;
    out.reserve(vertex_inc_.size());
    for (const auto& [v, _] : vertex_inc_) out.push_back(v);
    return out;
}

std::vector<EdgeId> Hypergraph::edges() const {
    std::vector<EdgeId> out;
    out.reserve(edge_verts_.size());
    for (const auto& [e, _] : edge_verts_) out.push_back(e);
    return out;
}

HyperedgeSet Hypergraph::edge_set() const {
    HyperedgeSet out;
    for (const auto& [e, _] : edge_verts_) out.insert(e);
    return out;
}

VertexId Hypergraph::fresh_vertex_id() const {
    return vertex_inc_.empty() ? 0 : vertex_inc_.rbegin()->first + 1;
}

std::string Hypergraph::serialize() const {
    std::ostringstream os;
    for (const auto& [v, _] : vertex_inc_) os << "v " << v << "\n";
    for (const auto& [e, vs] : edge_verts_) {
        os << "h " << e;
        for (VertexId v : vs) os << " " << v;
        os << "\n";
    }
    return os.str();
}

Hypergraph Hypergraph::deserialize(const std::string& text) {
    Hypergraph g;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            VertexId v;
            if (!(ls >> v)) throw ParseError("hypergraph deserialize: bad vertex line");
            g.add_vertex(v);
        } else if (tag == "h") {
            EdgeId e;
            if (!(ls >> e)) throw ParseError("hypergraph deserialize: bad edge line");
            std::vector<VertexId> vs;
            VertexId v;
            while (ls >> v) vs.push_back(v);
            g.add_hyperedge_with_id(e, vs);
        } else {
            throw ParseError("hypergraph deserialize: unknown tag " + tag);
        }
    }
    return g;
}

VertexSet BoundaryResult::interior() const {
    VertexSet out;
    for (VertexId v : vertex_set)
        if (!boundary.count(v)) out.insert(v);
    return out;
}

BoundaryResult boundary(const Hypergraph& g, const HyperedgeSet& c) {
    BoundaryResult r;
    for (EdgeId e : c) {
        for (VertexId v : g.edge_vertices(e)) r.vertex_set.insert(v);
    }
    // A vertex is on the boundary iff some incident edge lies outside c.
    for (VertexId v : r.vertex_set) {
        for (EdgeId e : g.incident(v)) {
            if (!c.count(e)) {
                r.boundary.insert(v);
                break;
            }
        }
    }
    return r;
}

std::size_t lambda(const Hypergraph& g, const HyperedgeSet& c) {
    return boundary(g, c).boundary.size();
}

Graph primal_graph(const Hypergraph& g, const HyperedgeSet& a) {
    Graph p;
    for (EdgeId e : a)
        for (VertexId v : g.edge_vertices(e)) p.ensure_vertex(v);
    for (EdgeId e : a) {
        const auto& vs = g.edge_vertices(e);
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                if (!p.has_edge(vs[i], vs[j])) p.add_edge(vs[i], vs[j]);
    }
    return p;
}

std::vector<HyperedgeSet> internal_components(const Hypergraph& g, const HyperedgeSet& a) {
    if (a.empty()) throw PreconditionError("internal_components: empty input");
    BoundaryResult br = boundary(g, a);
    VertexSet interior = br.interior();

    // Union-find over interior vertices; each hyperedge's interior vertices
    // form a clique in the primal graph, so they all join one class.
    std::map<VertexId, VertexId> parent;
    for (VertexId v : interior) parent[v] = v;
    auto find = [&](VertexId v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    auto unite = [&](VertexId a_, VertexId b_) { parent[find(a_)] = find(b_); };

    for (EdgeId e : a) {
        VertexId first = 0;
        bool have = false;
        for (VertexId v : g.edge_vertices(e)) {
            if (!interior.count(v)) continue;
            if (!have) {
                first = v;
                have = true;
            } else {
                unite(first, v);
            }
        }
    }

    std::map<VertexId, HyperedgeSet> comp_edges;
    std::vector<HyperedgeSet> out;
    for (EdgeId e : a) {
        std::optional<VertexId> root;
        for (VertexId v : g.edge_vertices(e)) {
            if (interior.count(v)) {
                root = find(v);
                break;
            }
        }
        if (root) {
            comp_edges[*root].insert(e);
        } else {
            // All vertices on bd(a): a single-hyperedge component.
            out.push_back({e});
        }
    }
    for (auto& [_, es] : comp_edges) out.push_back(std::move(es));
    return out;
}

bool is_internally_connected(const Hypergraph& g, const HyperedgeSet& a) {
    if (a.empty()) return false;
    if (a.size() == 1) return true;
    BoundaryResult br = boundary(g, a);
    VertexSet interior = br.interior();
    if (interior.empty()) return false;
    // Every edge must have an interior vertex, and the interior primal graph
    // must be connected.
    return internal_components(g, a).size() == 1;
}

Hypergraph support_hypergraph(const Graph& g) {
    Hypergraph h;
    for (VertexId v : g.vertices()) h.add_vertex(v);
    for (VertexId v : g.vertices()) h.add_hyperedge({v});
    for (const GEdge& e : g.edges()) h.add_hyperedge({e.u, e.v});
    return h;
}

void OperationSeq::apply_to(Hypergraph& g) const {
    for (const auto& op : ops) {
        switch (op.kind) {
            case HgOp::Kind::AddVertex: g.add_vertex(op.vertex); break;
            case HgOp::Kind::DeleteVertex: g.delete_vertex(op.vertex); break;
            case HgOp::Kind::AddHyperedge: g.add_hyperedge_with_id(op.edge, op.verts); break;
            case HgOp::Kind::DeleteHyperedge: g.delete_hyperedge(op.edge); break;
        }
    }
}

} // namespace dynkern

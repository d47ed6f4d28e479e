#ifndef DYNKERN_HYPERGRAPH_HPP
#define DYNKERN_HYPERGRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dynkern/graph.hpp"

namespace dynkern {

using EdgeId = std::uint32_t;
constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

using HyperedgeSet = std::set<EdgeId>;
using VertexSet = std::set<VertexId>;

// Labeled multi-hypergraph with a bipartite incidence representation.
// Hyperedges are identified by labels, never by vertex sets; labels are
// monotone counters and never reused within one hypergraph lifetime.
class Hypergraph {
public:
    bool has_vertex(VertexId v) const { return vertex_inc_.count(v) != 0; }
    bool has_edge(EdgeId e) const { return edge_verts_.count(e) != 0; }

    void add_vertex(VertexId v);
    void delete_vertex(VertexId v);

    // Adds a hyperedge over existing vertices, with a fresh label.
    EdgeId add_hyperedge(const std::vector<VertexId>& verts);
    // Adds a hyperedge with the given label (replay path). The label must be
    // fresh and is folded into the id counter.
    void add_hyperedge_with_id(EdgeId e, const std::vector<VertexId>& verts);
    void delete_hyperedge(EdgeId e);

    const std::vector<VertexId>& edge_vertices(EdgeId e) const;
    // Hyperedges incident to v.
    const std::set<EdgeId>& incident(VertexId v) const;

    std::size_t num_vertices() const { return vertex_inc_.size(); }
    std::size_t num_edges() const { return edge_verts_.size(); }
    std::size_t rank() const;
    // |G| = |V(G)| + sum over e of (|V(e)|+1).
    std::size_t size() const { return num_vertices() + size_edges_; }

    std::vector<VertexId> vertices() const;
    std::vector<EdgeId> edges() const;
    HyperedgeSet edge_set() const;

    EdgeId next_edge_id() const { return next_edge_id_; }
    VertexId fresh_vertex_id() const;

    bool operator==(const Hypergraph& o) const {
        return vertex_inc_ == o.vertex_inc_ && edge_verts_ == o.edge_verts_;
    }

    // Deterministic text form: one `v <id>` line per vertex, one
    // `h <id> <v1> ... <vk>` line per hyperedge, both in id order.
    std::string serialize() const;
    static Hypergraph deserialize(const std::string& text);

private:
    std::map<VertexId, std::set<EdgeId>> vertex_inc_;
    std::map<EdgeId, std::vector<VertexId>> edge_verts_;
    std::map<std::size_t, std::size_t> rank_counts_;
    std::size_t size_edges_ = 0;
    EdgeId next_edge_id_ = 0;
};

// V(C) and bd(C) by mark-and-scan over the incidence structure; int(C) is
// V(C) minus bd(C).
struct BoundaryResult {
    VertexSet vertex_set;
    VertexSet boundary;
    VertexSet interior() const;
};

BoundaryResult boundary(const Hypergraph& g, const HyperedgeSet& c);
std::size_t lambda(const Hypergraph& g, const HyperedgeSet& c);

// Inclusion-maximal internally connected subsets of a, found by flood-fill
// over interior vertices plus singleton parts for edges inside bd(a).
std::vector<HyperedgeSet> internal_components(const Hypergraph& g, const HyperedgeSet& a);

bool is_internally_connected(const Hypergraph& g, const HyperedgeSet& a);

// Primal graph of the subhypergraph induced by a.
Graph primal_graph(const Hypergraph& g, const HyperedgeSet& a);

// Support hypergraph of a simple graph: a singleton hyperedge per vertex and
// a pair hyperedge per edge.
Hypergraph support_hypergraph(const Graph& g);

// Basic hypergraph operations, replayable and identifier-stable.
struct HgOp {
    enum class Kind { AddVertex, DeleteVertex, AddHyperedge, DeleteHyperedge };
    Kind kind;
    VertexId vertex = 0;
    EdgeId edge = kNoEdge;
    std::vector<VertexId> verts;

    static HgOp add_vertex(VertexId v) { return {Kind::AddVertex, v, kNoEdge, {}}; }
    static HgOp delete_vertex(VertexId v) { return {Kind::DeleteVertex, v, kNoEdge, {}}; }
    static HgOp add_hyperedge(EdgeId e, std::vector<VertexId> vs) {
        return {Kind::AddHyperedge, 0, e, std::move(vs)};
    }
    static HgOp delete_hyperedge(EdgeId e, std::vector<VertexId> vs) {
        return {Kind::DeleteHyperedge, 0, e, std::move(vs)};
    }
    // Vertex ops have size 1, edge ops |V(e)|+1.
    std::size_t size() const {
        switch (kind) {
            case Kind::AddVertex:
            case Kind::DeleteVertex: return 1;
            default: return verts.size() + 1;
        }
    }
};

struct OperationSeq {
    std::vector<HgOp> ops;
    void push(HgOp op) { ops.push_back(std::move(op)); }
    void append(const OperationSeq& o) { ops.insert(ops.end(), o.ops.begin(), o.ops.end()); }
    std::size_t length() const { return ops.size(); }
    std::size_t size() const {
        std::size_t s = 0;
        for (const auto& op : ops) s += op.size();
        return s;
    }
    void apply_to(Hypergraph& g) const;
};

} // namespace dynkern

#endif

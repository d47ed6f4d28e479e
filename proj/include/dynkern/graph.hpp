#ifndef DYNKERN_GRAPH_HPP
#define DYNKERN_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "dynkern/errors.hpp"

namespace dynkern {

using VertexId = std::uint32_t;

// Undirected edge as an ordered pair (min, max).
struct GEdge {
    VertexId u, v;
    GEdge() : u(0), v(0) {}
    GEdge(VertexId a, VertexId b) : u(std::min(a, b)), v(std::max(a, b)) {}
    bool operator<(const GEdge& o) const { return u < o.u || (u == o.u && v < o.v); }
    bool operator==(const GEdge& o) const { return u == o.u && v == o.v; }
    bool operator!=(const GEdge& o) const { return !(*this == o); }
};

// Simple undirected graph over stable vertex ids. Ordered containers keep
// iteration deterministic.
class Graph {
public:
    bool has_vertex(VertexId v) const { return adj_.count(v) != 0; }
    bool has_edge(VertexId u, VertexId v) const {
        auto it = adj_.find(u);
        return it != adj_.end() && it->second.count(v) != 0;
    }

    void add_vertex(VertexId v) {
        if (has_vertex(v)) throw DuplicateVertex("add_vertex: vertex exists");
        adj_[v];
    }

    void ensure_vertex(VertexId v) { adj_[v]; }

    void delete_vertex(VertexId v) {
        auto it = adj_.find(v);
        if (it == adj_.end()) throw MissingVertex("delete_vertex: no such vertex");
        if (!it->second.empty()) throw NonIsolatedVertex("delete_vertex: vertex not isolated");
        adj_.erase(it);
    }

    void add_edge(VertexId u, VertexId v) {
        if (u == v) throw PreconditionError("add_edge: loop");
        if (!has_vertex(u) || !has_vertex(v)) throw MissingVertex("add_edge: missing endpoint");
        if (has_edge(u, v)) throw DuplicateEdge("add_edge: edge exists");
        adj_[u].insert(v);
        adj_[v].insert(u);
        ++num_edges_;
    }

    void delete_edge(VertexId u, VertexId v) {
        if (!has_edge(u, v)) throw MissingEdge("delete_edge: no such edge");
        adj_[u].erase(v);
        adj_[v].erase(u);
        --num_edges_;
    }

    std::size_t num_vertices() const { return adj_.size(); }
    std::size_t num_edges() const { return num_edges_; }
    std::size_t size() const { return num_vertices() + num_edges(); }

    const std::set<VertexId>& neighbors(VertexId v) const {
        auto it = adj_.find(v);
        if (it == adj_.end()) throw MissingVertex("neighbors: no such vertex");
        return it->second;
    }

    std::size_t degree(VertexId v) const { return neighbors(v).size(); }

    std::vector<VertexId> vertices() const {
        std::vector<VertexId> out;
        out.reserve(adj_.size());
        for (const auto& [v, _] : adj_) out.push_back(v);
        return out;
    }

    std::vector<GEdge> edges() const {
        std::vector<GEdge> out;
        out.reserve(num_edges_);
        for (const auto& [v, ns] : adj_)
            for (VertexId w : ns)
                if (v < w) out.emplace_back(v, w);
        return out;
    }

    bool operator==(const Graph& o) const { return adj_ == o.adj_; }

private:
    std::map<VertexId, std::set<VertexId>> adj_;
    std::size_t num_edges_ = 0;
};

// Induced subgraph on a vertex subset.
Graph induced_subgraph(const Graph& g, const std::set<VertexId>& verts);

} // namespace dynkern

#endif

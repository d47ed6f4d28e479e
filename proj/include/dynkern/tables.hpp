#ifndef DYNKERN_TABLES_HPP
#define DYNKERN_TABLES_HPP

#include <optional>
#include <string>
#include <vector>

#include "dynkern/graph.hpp"

namespace dynkern {

// Graph with distinguished boundary vertices. The in-order labeling is
// implicit: label i+1 is the i-th boundary vertex in ascending VertexId
// order, so tables indexed by position are canonical under relabeling.
struct BoundariedGraph {
    Graph graph;
    std::vector<VertexId> boundary; // sorted unique, subset of V(graph)

    void normalize_boundary();
    std::size_t t() const { return boundary.size(); }
};

// Disjoint union identifying boundary vertices with equal labels. Vertices
// of y are remapped to fresh ids above x's.
Graph glue_u(const BoundariedGraph& x, const BoundariedGraph& y);
// Same, keeping the identified vertices as the boundary; requires equal
// label-set sizes.
BoundariedGraph glue_b(const BoundariedGraph& x, const BoundariedGraph& y);

enum class Plugin { VertexCover, DominatingSet };

const char* plugin_name(Plugin p);
std::optional<Plugin> plugin_from_name(const std::string& name);

constexpr int kInfCost = 1 << 28;

// Cost table over boundary-state vectors. VC states per boundary vertex:
// 0 = out, 1 = in. DS: 0 = black (in solution), 1 = white (dominated),
// 2 = grey (not yet dominated). Entries are raw costs until normalized.
struct ProblemTable {
    Plugin plugin = Plugin::VertexCover;
    std::size_t t = 0;
    std::vector<int> cost;

    static std::size_t arity(Plugin p) { return p == Plugin::VertexCover ? 2 : 3; }
    std::size_t arity() const { return arity(plugin); }
    static ProblemTable empty(Plugin p) {
        ProblemTable tb;
        tb.plugin = p;
        tb.t = 0;
        tb.cost = {0};
        return tb;
    }

    int& at(std::size_t idx) { return cost[idx]; }
    int at(std::size_t idx) const { return cost[idx]; }
    std::size_t size() const { return cost.size(); }
    // state of position pos in pattern idx
    std::size_t state(std::size_t idx, std::size_t pos) const;

    // Subtracts the minimum finite entry and returns it (0 if none finite).
    int normalize();
    bool all_infinite() const;

    bool operator==(const ProblemTable& o) const {
        return plugin == o.plugin && t == o.t && cost == o.cost;
    }
    bool operator<(const ProblemTable& o) const;
    std::string to_string() const;
    static ProblemTable from_string(const std::string& s);
};

// Table primitives; `pos` refers to the position in the sorted boundary.
ProblemTable table_introduce(const ProblemTable& tb, std::size_t pos);
ProblemTable table_forget(const ProblemTable& tb, std::size_t pos);
ProblemTable table_apply_edge(const ProblemTable& tb, std::size_t pos_u, std::size_t pos_v);
// Joins tb (over big boundary) with sub (over a subset of positions given by
// mapping sub position -> big position).
ProblemTable table_join(const ProblemTable& tb, const ProblemTable& sub,
                        const std::vector<std::size_t>& sub_to_big);

// Ground-truth table by enumeration over all vertex subsets.
ProblemTable table_of(Plugin p, const BoundariedGraph& g, std::size_t max_vertices = 20);

// Exact optimum of a plugin problem on a closed graph, by table machinery.
int opt_by_table(Plugin p, const Graph& g, std::size_t max_vertices = 20);

} // namespace dynkern

#endif

#ifndef DYNKERN_AUTOMATA_HPP
#define DYNKERN_AUTOMATA_HPP

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dynkern/superbranch.hpp"
#include "dynkern/tables.hpp"
#include "dynkern/treewidth.hpp"

namespace dynkern {

// Automaton state for the protrusion replacement plugins: the normalized
// table of the subtree's boundaried graph over its adhesion, plus the
// accumulated shift. Null states mark subtrees whose working width exceeded
// the evaluation budget; they propagate upward and force the verbatim
// fallback in the kernel.
struct TableState {
    bool null = false;
    ProblemTable table; // normalized
    long long shift = 0;

    bool operator==(const TableState& o) const {
        return null == o.null && shift == o.shift && table == o.table;
    }
    bool operator!=(const TableState& o) const { return !(*this == o); }
};

// One fold step: combine children states over their adhesions, apply the
// node-local edges, and forget down to the out boundary, keeping the working
// vertex set as small as the later needs allow.
struct FoldChild {
    std::vector<VertexId> adhesion; // sorted
    const TableState* state;
};

TableState fold_tables(Plugin plugin, const std::vector<VertexId>& initial_verts,
                       const std::vector<FoldChild>& children, const std::set<GEdge>& local_edges,
                       const std::vector<VertexId>& out_boundary, std::size_t width_cap,
                       std::uint64_t* work = nullptr);

// Maintained run of a plugin automaton over the superbranch decomposition:
// state(t) is the table of (G restricted below t, adh(t)) for non-root t.
class PluginRun {
public:
    PluginRun(Plugin plugin, std::size_t width_cap) : plugin_(plugin), width_cap_(width_cap) {}

    Plugin plugin() const { return plugin_; }

    // The state a node should have, computed from current children states.
    TableState compute_state(const SuperbranchDecomp& d, NodeId t) const;

    // Full run from scratch.
    void compute_run(const SuperbranchDecomp& d);
    // Bottom-up repair along a dirty set (closed under ancestors), stopping
    // early where the recomputed state equals the stored one.
    void repair_run(const SuperbranchDecomp& d, const std::set<NodeId>& dirty);

    const TableState& state_of(NodeId t) const;
    bool has_state(NodeId t) const { return states_.count(t) != 0; }
    void forget_dead(const SuperbranchDecomp& d);

    bool equals_recompute(const SuperbranchDecomp& d) const;
    std::uint64_t work() const { return work_; }

private:
    Plugin plugin_;
    std::size_t width_cap_;
    std::map<NodeId, TableState> states_;
    mutable std::uint64_t work_ = 0;
};

// Folds the states of the root children corresponding to the torso-edge set
// s into the state over bd(s), querying edges(r) for the chain-local edges.
TableState prefix_assemble(Plugin plugin, const SuperbranchDecomp& d, const PluginRun& run,
                           const HyperedgeSet& s, std::size_t width_cap);

// Materializes the internal part of s (a set of root-torso edges) and
// decides itw <= omega exactly. Sound in both directions; throws
// SizeLimitExceeded when the materialization or DP budget is exceeded.
bool itw_decider(const SuperbranchDecomp& d, const HyperedgeSet& s, int omega,
                 std::size_t materialize_cap = 4096, std::size_t dp_cap = 20);

// The internal subgraph of s materialized as a plain graph (interior
// vertices of the corresponding support-hyperedge set, with their edges).
Graph materialize_internal_graph(const SuperbranchDecomp& d, const HyperedgeSet& s,
                                 std::size_t materialize_cap = SIZE_MAX);

} // namespace dynkern

#endif

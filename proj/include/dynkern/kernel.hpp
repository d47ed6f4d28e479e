#ifndef DYNKERN_KERNEL_HPP
#define DYNKERN_KERNEL_HPP

#include <map>
#include <string>
#include <vector>

#include "dynkern/automata.hpp"
#include "dynkern/representatives.hpp"

namespace dynkern {

// One kernel update in the output protocol.
struct KernelOp {
    enum class Kind { AddVertex, DeleteVertex, AddEdge, DeleteEdge, Shift };
    Kind kind;
    VertexId v = 0;
    GEdge e;
    long long shift = 0; // new total shift for Kind::Shift

    std::string to_line() const;
};

// Maintains K and the shift so that OPT(K) + delta = OPT(G). Root-bag
// vertices and edges(r) carry their graph ids; replaced protrusion interiors
// use fresh gadget ids. Children without a usable representative (missing
// table, width overflow, or a progressivity miss) are kept verbatim.
class KernelState {
public:
    KernelState(Plugin plugin, const RepresentativeStore* store,
                VertexId gadget_base = (VertexId(1) << 30))
        : plugin_(plugin), store_(store), gadget_base_(gadget_base), next_gadget_(gadget_base) {}

    Plugin plugin() const { return plugin_; }
    const Graph& kernel() const { return k_; }
    long long delta() const { return delta_; }
    std::size_t unreplaced_children() const;
    std::size_t replaced_children() const;

    // Applies one engine update: edges(r) removals, the torso sequence in
    // order (materializing/removing children), then edges(r) additions.
    std::vector<KernelOp> apply_change(const SuperbranchDecomp& d, const PluginRun& run,
                                       const OperationSeq& torso_ops,
                                       const std::vector<std::pair<GEdge, bool>>& edges_delta);

    // Canonical signature of the kernel structure (gadget interiors
    // relabeled per child); equal signatures mean equal kernels.
    std::string signature() const;

    // From-scratch assembly over the current decomposition state.
    static KernelState assemble(const SuperbranchDecomp& d, const PluginRun& run, Plugin plugin,
                                const RepresentativeStore* store,
                                VertexId gadget_base = (VertexId(1) << 30));

private:
    struct ChildMat {
        std::vector<VertexId> interior; // kernel ids
        std::vector<GEdge> edges;       // kernel ids
        long long delta_c = 0;
        bool replaced = false;
    };

    void materialize_child(const SuperbranchDecomp& d, const PluginRun& run, EdgeId torso_edge,
                           std::vector<KernelOp>* out);
    void remove_child(EdgeId torso_edge, std::vector<KernelOp>* out);
    // reference-counted: a vertex can be owned by the root bag and a child
    // interior transiently within one sequence, and a gadget edge between
    // adhesion vertices can coincide with a root edge (a multigraph view
    // collapsed onto a simple K, which preserves both optima)
    void kv_add(VertexId v, std::vector<KernelOp>* out);
    void kv_del(VertexId v, std::vector<KernelOp>* out);
    void ke_add(const GEdge& e, std::vector<KernelOp>* out);
    void ke_del(const GEdge& e, std::vector<KernelOp>* out);

    Plugin plugin_;
    const RepresentativeStore* store_;
    VertexId gadget_base_;
    VertexId next_gadget_;
    Graph k_;
    long long delta_ = 0;
    std::map<EdgeId, ChildMat> children_;
    std::map<VertexId, int> vref_;
    std::map<GEdge, int> eref_;
};

// Removes add/delete pairs that cancel within one report, so children are
// only materialized when they survive the whole update.
OperationSeq normalize_ops(const OperationSeq& seq);

} // namespace dynkern

#endif

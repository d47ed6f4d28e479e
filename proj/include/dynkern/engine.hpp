#ifndef DYNKERN_ENGINE_HPP
#define DYNKERN_ENGINE_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "dynkern/balancing.hpp"
#include "dynkern/chips.hpp"
#include "dynkern/kernel.hpp"

namespace dynkern {

struct EngineConfig {
    // alpha = 6*omega + 3 keeps every merge of the reduce loop certified:
    // wl of a merged union is at most 3*(itw + lambda + 1) <= 3*(omega+k+1)
    int c = 15;             // adhesion & semigood parameter alpha
    int omega = 2;          // target itw bound for merges
    std::size_t k = 2;      // chip boundary bound
    std::size_t s1 = 16;    // 2^{omega+2}
    std::size_t s2 = 64;
    std::size_t merge_budget = 8; // kappa-hat: per update, zeta + 2*kappa-hat merges
    std::size_t density_factor = 6;
    bool paranoid = false;
    Plugin kernel_plugin = Plugin::VertexCover;
    std::vector<Plugin> runs{Plugin::VertexCover, Plugin::DominatingSet};
    std::size_t width_cap_vc = 16;
    std::size_t width_cap_ds = 9;
    std::size_t itw_materialize_cap = 128;
    std::size_t itw_dp_cap = 18;
    std::size_t oracle_scale = 12; // exact wl checks up to this many hyperedges
    std::size_t ops_ceiling = 4096;

    std::size_t width_cap(Plugin p) const {
        return p == Plugin::VertexCover ? width_cap_vc : width_cap_ds;
    }
    void validate() const;
    BalanceConfig balance() const { return BalanceConfig{c}; }
};

// Everything one update did, replayable against mirrors of torso(r), the
// root annotations, and the kernel.
struct ChangeReport {
    OperationSeq torso_ops;
    std::vector<std::pair<GEdge, bool>> edges_root_delta;
    std::vector<std::pair<VertexId, bool>> bag_root_delta;
    std::vector<KernelOp> kernel_delta;
    std::size_t work_units = 0;
    std::size_t merges = 0;
    std::size_t merges_skipped = 0;
    std::size_t rotations = 0;
};

struct EngineMetrics {
    std::uint64_t updates = 0;
    std::uint64_t merges = 0;
    std::uint64_t merges_skipped = 0;
    std::uint64_t rotations = 0;
    std::uint64_t work_units = 0;
    std::uint64_t kernel_ops = 0;
};

// The assembled data structure: graph updates, isolate-then-edit paths, and
// the root-degree reduction loop (chips query, well-linked refinement,
// merge).
class Engine {
public:
    explicit Engine(EngineConfig cfg, std::shared_ptr<const RepresentativeStore> store = nullptr);

    ChangeReport add_vertex(VertexId v);
    ChangeReport delete_vertex(VertexId v);
    ChangeReport add_edge(VertexId u, VertexId v);
    ChangeReport delete_edge(VertexId u, VertexId v);

    // Groups the root children behind the torso-edge set b under a fresh
    // child and rebalances it. Preconditions per the merge contract.
    void merge(const HyperedgeSet& b);
    // Query-refine-merge loop; returns the number of merges performed.
    std::size_t reduce_root_degree(std::size_t zeta, ChangeReport* rep);

    const Graph& graph() const { return g_; }
    const SuperbranchDecomp& decomp() const { return d_; }
    const ChipIndex& chip_index() const { return chips_; }
    const EngineConfig& config() const { return cfg_; }
    const PluginRun& run(Plugin p) const;
    const KernelState& kernel() const { return *kernel_; }
    const EngineMetrics& metrics() const { return metrics_; }
    EdgeId singleton_edge(VertexId v) const;
    EdgeId pair_edge(VertexId u, VertexId v) const;
    std::size_t root_degree() const { return d_.node(d_.root()).children.size(); }
    std::size_t max_root_child_depth() const;

    // True when follow-up bookkeeping may merge the set: well-linkedness of
    // the union is certified exactly at oracle scale or via the
    // 3*(tw+1)-style bound; refusals are counted.
    bool merge_safe(const HyperedgeSet& b) const;

private:
    ChangeReport run_update(const std::function<void()>& structural);
    void sync_after_batch(BatchReport&& batch, ChangeReport* rep);
    void maybe_paranoid();

    EngineConfig cfg_;
    std::shared_ptr<const RepresentativeStore> store_;
    Graph g_;
    SuperbranchDecomp d_;
    Balancer bal_;
    ChipIndex chips_;
    std::map<Plugin, PluginRun> runs_;
    std::optional<KernelState> kernel_;
    std::map<VertexId, EdgeId> singleton_;
    std::map<GEdge, EdgeId> pair_;
    EngineMetrics metrics_;
    // itw oracle cache: keyed by (S, bd(S)) and validated against the
    // subtree stamps of S's children, which bump on any subtree change
    mutable std::map<std::pair<HyperedgeSet, VertexSet>,
                     std::pair<bool, std::vector<std::uint64_t>>>
        oracle_cache_;
    // paranoid only: stamps of root-child subtrees per torso label, used to
    // assert the delete-on-change guarantee of the torso sequences
    std::map<EdgeId, std::uint64_t> label_stamps_;
};

} // namespace dynkern

#endif

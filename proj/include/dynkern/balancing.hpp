#ifndef DYNKERN_BALANCING_HPP
#define DYNKERN_BALANCING_HPP

#include "dynkern/superbranch.hpp"
#include "dynkern/welllinked.hpp"

namespace dynkern {

struct BalanceConfig {
    int c = 3; // semigood parameter, >= 3
    std::size_t max_degree() const { return (std::size_t(1) << (2 * c)) + 1; }
    std::size_t window() const { return std::size_t(1) << (2 * c + 1); }
    void validate() const {
        if (c < 3) throw ConfigError("balance config: c >= 3 required");
        if (c > 20) throw ConfigError("balance config: c too large for derived bounds");
    }
};

// x is d-unbalanced if some descendant s with depth(s) >= depth(x) + d holds
// at least 2/3 of x's leaves.
bool is_unbalanced(const SuperbranchDecomp& d, NodeId x, std::size_t window);
std::vector<NodeId> unbalanced_nodes(const SuperbranchDecomp& d, NodeId t, std::size_t window);

// Verification-grade predicates. The wl(L[x]) <= c part runs only when
// |L[x]| fits the enumeration budget; wl_checked reports whether it ran.
bool is_c_semigood_at(const SuperbranchDecomp& d, NodeId x, const BalanceConfig& cfg,
                      std::size_t wl_budget = 12, bool* wl_checked = nullptr);
bool is_c_good_at(const SuperbranchDecomp& d, NodeId x, const BalanceConfig& cfg,
                  std::size_t wl_budget = 12, bool* wl_checked = nullptr);

// Invariant-preserving reference implementations of the balancing contracts.
// All rotations stay inside the subtree they are given.
class Balancer {
public:
    Balancer(SuperbranchDecomp& d, BalanceConfig cfg) : d_(d), cfg_(cfg) { cfg_.validate(); }

    // Restores the c-good property below a root child t: flattens heavy
    // paths of unbalanced nodes, then regroups fat nodes into well-linked
    // parts. The potential must not increase; a pairing pass compresses
    // further if the primary strategy fell short.
    void rebalance_subtree(NodeId t);

    // Lifts the leaf of e (a hyperedge of L[t] with rank <= 2) to be a child
    // of the surviving root child; abandoned sibling sets are regrouped into
    // well-linked parts. Returns that root child.
    NodeId rotate_to_root(NodeId t, EdgeId e);

    // Makes the leaves of all hyperedges in x (|x| <= 3) root children via
    // rotate-to-root, contract into the root, and rebalancing of the
    // abandoned children.
    void isolate(const std::vector<EdgeId>& x);

    WlCounters& counters() { return ctr_; }

private:
    void regroup(NodeId v);
    bool huffman_pair_once(NodeId u);
    void pairing_compress(NodeId x, double phi_target);
    // Splits off every partition part of size >= 2 of the given torso edge
    // subset; returns created nodes.
    std::vector<NodeId> split_partition_parts(NodeId v, const HyperedgeSet& base);

    SuperbranchDecomp& d_;
    BalanceConfig cfg_;
    WlCounters ctr_;
};

} // namespace dynkern

#endif

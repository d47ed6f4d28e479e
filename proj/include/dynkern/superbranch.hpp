#ifndef DYNKERN_SUPERBRANCH_HPP
#define DYNKERN_SUPERBRANCH_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynkern/hypergraph.hpp"

namespace dynkern {

using NodeId = std::uint32_t;
constexpr NodeId kNoNode = static_cast<NodeId>(-1);

// One basic rotation, with the information required to replay it and its
// size for cost accounting.
struct Rotation {
    enum class Kind { Contract, Split, InsertLeaf, DeleteLeaf };
    Kind kind;
    NodeId node = kNoNode;       // contract: t; split: t; insert: t; delete: leaf
    NodeId created = kNoNode;    // split: t_C; insert: new leaf
    HyperedgeSet split_edges;    // split: torso edge labels
    EdgeId hyperedge = kNoEdge;  // insert: new support hyperedge
    std::size_t size = 0;        // ||s||
};

struct RotationSeq {
    std::vector<Rotation> rots;
    std::size_t size() const {
        std::size_t s = 0;
        for (const auto& r : rots) s += r.size + 1;
        return s;
    }
};

// Deltas accumulated over one batch of rotations (one public operation).
struct BatchReport {
    RotationSeq rotations;
    OperationSeq root_torso_ops;                    // the sequence C for torso(r)
    std::vector<std::pair<GEdge, bool>> edges_root_delta; // (edge, inserted?)
    std::vector<std::pair<VertexId, bool>> bag_root_delta; // (vertex, inserted?)
    std::set<NodeId> trace;                         // anc(V(S)) in the new tree
    std::set<NodeId> edges_dirty;                   // nodes whose edges(.) changed
    std::size_t work_units = 0;
};

// Rooted superbranch decomposition of a support hypergraph, with
// materialized torsos, adhesions, leaf counts, the EL/edges annotation of
// the corresponding protrusion decomposition, and the four basic rotations.
//
// Mutations happen between begin_batch()/finish_batch(); each batch yields
// one BatchReport describing the root-torso delta and annotation deltas.
class SuperbranchDecomp {
public:
    struct Node {
        NodeId parent = kNoNode;
        std::vector<NodeId> children;
        EdgeId leaf_edge = kNoEdge; // valid iff leaf
        std::vector<VertexId> leaf_verts; // immutable copy of V(leaf_edge)
        std::vector<VertexId> adhesion; // bd(L[t]) sorted; empty for root
        Hypergraph torso;               // internal nodes only
        std::map<EdgeId, NodeId> torso_to_nbr;
        std::map<NodeId, EdgeId> nbr_to_torso;
        std::size_t leaf_count = 0;
        std::uint64_t stamp = 0;
        std::set<GEdge> el;     // EL(t)
        std::set<GEdge> edges;  // edges(t) = EL(t) \ EL(parent)
        bool is_leaf() const { return leaf_edge != kNoEdge; }
    };

    SuperbranchDecomp();

    const Hypergraph& support() const { return support_; }
    NodeId root() const { return root_; }
    const Node& node(NodeId t) const;
    bool alive(NodeId t) const { return nodes_.count(t) != 0; }
    NodeId leaf_of(EdgeId e) const;
    NodeId parent(NodeId t) const { return node(t).parent; }
    std::size_t depth(NodeId t) const;
    std::size_t subtree_depth(NodeId t) const;
    // Hyperedges of L[t].
    HyperedgeSet leaf_edges_below(NodeId t) const;
    std::vector<NodeId> subtree_nodes(NodeId t) const;
    NodeId root_child_above(NodeId t) const;

    double potential() const { return potential_; }
    double recompute_potential() const;
    std::uint64_t stamp_of(NodeId t) const { return node(t).stamp; }

    // --- batch control ---
    void begin_batch();
    BatchReport finish_batch();
    bool batch_open() const { return batch_open_; }

    // --- basic rotations ---
    // Contract the edge between t and its parent; t's children move to the
    // parent. Returns the parent's torso delta.
    OperationSeq contract_edge(NodeId t);
    // Split the torso-edge subset c (labels of torso(t), parent edge
    // excluded) into a fresh child of t. Returns (new node, torso(t) delta).
    std::pair<NodeId, OperationSeq> split(NodeId t, const HyperedgeSet& c);
    // Insert a new support hyperedge with the given vertices as a leaf-child
    // of t; x lists leaf-children of t covering V(e) among existing vertices.
    // New vertices are added to the support hypergraph.
    std::pair<NodeId, OperationSeq> insert_leaf(NodeId t, const std::vector<VertexId>& everts,
                                                const std::vector<NodeId>& x);
    // Delete a leaf and its support hyperedge.
    OperationSeq delete_leaf(NodeId leaf);

    // Static construction used by tests: all hyperedges as root children.
    static SuperbranchDecomp flat(const Hypergraph& h);

    // bag(t) of the corresponding (non-binarized) decomposition node.
    std::vector<VertexId> bag(NodeId t) const;
    const std::set<VertexId>& root_bag() const { return root_bag_; }
    const std::set<GEdge>& root_el() const { return root_el_; }

    std::string dump() const;     // deterministic text form
    std::string graphviz() const;

    // From-scratch recomputation helpers (verification).
    VertexSet recompute_adhesion(NodeId t) const;
    std::set<GEdge> recompute_el(NodeId t) const;

private:
    Node& mut(NodeId t);
    NodeId new_node();
    void destroy_node(NodeId t);
    void bump_stamps_upwards(NodeId t);
    void touch(NodeId t);
    double phi_term(NodeId t) const;
    void phi_remove(NodeId t);
    void phi_add(NodeId t);

    // torso edit helpers; record ops into the batch when t is the root
    EdgeId torso_add_edge(NodeId t, NodeId nbr, const std::vector<VertexId>& verts);
    void torso_delete_edge(NodeId t, EdgeId te);
    void torso_add_vertex(NodeId t, VertexId v);
    void torso_delete_vertex(NodeId t, VertexId v);
    void record_root_op(HgOp op);

    std::set<GEdge> root_contribution(NodeId child) const;
    void root_el_insert(const GEdge& e);
    void root_el_erase(const GEdge& e);
    void attach_root_contribution(NodeId child);
    void detach_root_contribution(NodeId child);
    void refresh_el_upwards(NodeId from);
    void refresh_annotations();

    Hypergraph support_;
    std::unordered_map<NodeId, Node> nodes_;
    std::unordered_map<EdgeId, NodeId> leaf_of_;
    NodeId root_ = kNoNode;
    NodeId next_node_ = 0;
    double potential_ = 0.0;
    std::uint64_t stamp_counter_ = 0;

    std::set<VertexId> root_bag_;
    std::set<GEdge> root_el_;

    bool batch_open_ = false;
    BatchReport batch_;
    std::set<NodeId> batch_touched_;
    std::set<NodeId> batch_edges_dirty_;
};

} // namespace dynkern

#endif

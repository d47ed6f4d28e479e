#ifndef DYNKERN_CHIPS_HPP
#define DYNKERN_CHIPS_HPP

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dynkern/hypergraph.hpp"

namespace dynkern {

struct ChipParams {
    std::size_t s1 = 16;
    std::size_t s2 = 64;
    std::size_t k = 2;
    void validate() const {
        if (s1 < 2 || s2 < s1) throw ConfigError("chip params: need 2 <= s1 <= s2");
    }
};

// The oracle sees exactly the labeled set and its boundary.
using ChipOracle = std::function<bool(const HyperedgeSet&, const VertexSet&)>;

// Lists all sets A with I <= A, X <= bd(A), |A| <= p, |V(A)| <= s,
// lambda(A) <= k, and every internal component of A intersecting I.
// Branches on a boundary vertex of I outside X: either it stays on the
// boundary or it becomes internal.
std::vector<HyperedgeSet> static_local_search(const Hypergraph& g, const HyperedgeSet& i,
                                              const VertexSet& x, std::size_t p, std::size_t s,
                                              std::size_t k, std::uint64_t* work = nullptr);

// Chips grouped by boundary with a volume-ranked group order; mirrors one
// hypergraph (the root torso) and is kept in sync by replaying its
// operation sequences.
class ChipIndex {
public:
    ChipIndex(ChipParams params, ChipOracle oracle);

    const Hypergraph& mirror() const { return g_; }
    ChipParams params() const { return params_; }

    void apply(const HgOp& op);
    void apply_seq(const OperationSeq& seq);

    void on_add_vertex(VertexId v);
    void on_delete_vertex(VertexId v);
    void on_add_hyperedge(EdgeId e, const std::vector<VertexId>& verts);
    void on_delete_hyperedge(EdgeId e);

    // Lemma-style query: a set C with s1/2 <= |C| <= s2, lambda(C) <= k,
    // all internal components sharing bd(C) and passing the oracle; or
    // nothing when no group reaches volume s1.
    std::optional<HyperedgeSet> query() const;

    // All chips with I <= Z and X <= bd(Z); relaxed_k widens the boundary
    // bound (the delete path re-scan).
    std::vector<HyperedgeSet> enumerate_chips_containing(const HyperedgeSet& i, const VertexSet& x,
                                                         std::size_t relaxed_k) const;

    bool is_chip(const HyperedgeSet& z) const;

    // Full recomputation (oracle-grade) for equivalence checks.
    std::set<HyperedgeSet> all_chips_bruteforce() const;
    std::set<HyperedgeSet> indexed_chips() const;
    bool equals_bruteforce() const;

    std::size_t chip_count() const;
    std::string debug_dump() const;
    std::uint64_t work() const { return work_; }

private:
    using BKey = std::vector<VertexId>;
    struct Group {
        std::set<HyperedgeSet> chips; // ordered by (size, lex) via comparator below
        std::size_t volume = 0;
    };

    static BKey key_of(const VertexSet& b);
    void insert_chip(const HyperedgeSet& z);
    void remove_chip_exact(const HyperedgeSet& z);

    ChipParams params_;
    ChipOracle oracle_;
    Hypergraph g_;
    std::map<BKey, Group> groups_;                 // S_B per boundary + S* role
    std::set<std::pair<std::size_t, BKey>> heap_;  // (volume, B), max via rbegin
    // exact-removal bookkeeping: where each chip is filed, and which chips
    // contain a given edge; removal must not depend on the oracle, whose
    // answers go stale for labels that die within one update
    std::map<HyperedgeSet, BKey> location_;
    std::map<EdgeId, std::set<HyperedgeSet>> by_edge_;
    mutable std::map<HyperedgeSet, bool>* memo_ = nullptr; // per-op oracle memo
    mutable std::uint64_t work_ = 0;
};

} // namespace dynkern

#endif

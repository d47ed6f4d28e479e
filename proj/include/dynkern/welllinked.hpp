#ifndef DYNKERN_WELLLINKED_HPP
#define DYNKERN_WELLLINKED_HPP

#include <optional>
#include <utility>
#include <vector>

#include "dynkern/hypergraph.hpp"

namespace dynkern {

struct WlCounters {
    std::uint64_t flow_calls = 0;
    std::uint64_t pairs_checked = 0;
};

// Max vertex-disjoint paths between two (possibly overlapping) vertex sets
// in a graph, by unit vertex capacities. Returns the flow value and, when
// `cut` is non-null, a minimum vertex cut meeting every b1-b2 path.
std::size_t max_vertex_disjoint_paths(const Graph& g, const VertexSet& b1, const VertexSet& b2,
                                      VertexSet* cut = nullptr);

struct WellLinkedVerdict {
    bool well_linked;
    // Valid bipartition with lambda(b1) < lambda(input) and
    // lambda(b2) < lambda(input) when not well-linked.
    HyperedgeSet b1, b2;
};

// Flow characterization: A is well-linked iff every pair of equal-size
// subsets of bd(A) is linked by that many vertex-disjoint paths in the
// primal graph of G[A].
bool is_well_linked(const Hypergraph& g, const HyperedgeSet& a, WlCounters* ctr = nullptr);

// Decision plus witness extraction from the minimum vertex cut of a failed
// pair check. A hyperedge whose vertices all lie on the cut goes to the side
// minimizing max(lambda(b1), lambda(b2)), ties to b1.
WellLinkedVerdict well_linked_witness(const Hypergraph& g, const HyperedgeSet& b,
                                      WlCounters* ctr = nullptr);

// Partition into at most 2^lambda(b) well-linked parts by repeated witness
// splitting.
std::vector<HyperedgeSet> partition_well_linked(const Hypergraph& g, const HyperedgeSet& b,
                                                WlCounters* ctr = nullptr);

// Oracle-grade decision by full bipartition enumeration; independent of the
// flow path.
bool is_well_linked_bruteforce(const Hypergraph& g, const HyperedgeSet& a);

// Largest lambda over well-linked subsets of es, by full enumeration.
// Verification-grade; throws SizeLimitExceeded beyond max_edges.
std::size_t well_linked_number(const Hypergraph& g, const HyperedgeSet& es,
                               std::size_t max_edges = 12);

} // namespace dynkern

#endif

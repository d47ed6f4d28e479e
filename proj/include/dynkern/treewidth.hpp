#ifndef DYNKERN_TREEWIDTH_HPP
#define DYNKERN_TREEWIDTH_HPP

#include "dynkern/graph.hpp"

namespace dynkern {

// Empty graph has treewidth -1 (width = max bag size minus one).

bool is_forest(const Graph& g);

// Exact decision for tw <= 2 by the degree-<=2 reduction.
bool treewidth_at_most_2(const Graph& g);

// Exact treewidth by elimination-order subset DP with simplicial pruning.
// Throws SizeLimitExceeded when a connected component exceeds max_component.
int exact_treewidth(const Graph& g, std::size_t max_component = 20);

bool treewidth_at_most(const Graph& g, int k, std::size_t max_component = 20);

// Independent oracle: all elimination orders, n <= 8.
int treewidth_elimination_bruteforce(const Graph& g);

// Greedy min-fill upper bound.
int treewidth_upper_bound_minfill(const Graph& g);

// Max-min-degree (degeneracy-style) lower bound.
int treewidth_lower_bound_mmd(const Graph& g);

} // namespace dynkern

#endif

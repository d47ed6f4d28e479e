#ifndef DYNKERN_VERIFY_HPP
#define DYNKERN_VERIFY_HPP

#include <string>

#include "dynkern/engine.hpp"

namespace dynkern {

struct Verdict {
    bool pass = true;
    std::string witness; // offending node/set/value when failing

    static Verdict ok() { return {}; }
    static Verdict fail(std::string w) { return {false, std::move(w)}; }
};

// Exact optima by branch and bound with degree rules; independent of the
// table machinery.
int opt_vc(const Graph& g, std::size_t max_vertices = 24);
int opt_ds(const Graph& g, std::size_t max_vertices = 24);
int opt_of(Plugin p, const Graph& g, std::size_t max_vertices = 24);

// Smallest treewidth-eta-modulator by subset enumeration, smallest first.
int tw_mod_eta(const Graph& g, int eta, std::size_t max_vertices = 18);

struct ValidationOptions {
    bool check_well_linkedness = true;      // flow-based, every node
    std::size_t wl_exact_budget = 12;       // full-enumeration cross-check scale
    bool check_chips = true;                // brute-force chip equality (small torsos)
    std::size_t chips_budget = 12;
    bool check_runs = true;
    bool check_kernel_opt = false;          // brute-force OPT equality
    std::size_t kernel_opt_budget = 18;
};

// Structural validator with witnesses: superbranch well-formedness,
// downwards well-linkedness, adhesion/degree bounds, tree-decomposition
// axioms of the corresponding binarized decomposition, correspondence,
// normality, edges partition, EL recurrence, run and kernel consistency.
Verdict validate_decomposition(const Engine& engine, const ValidationOptions& opts = {});

// tw-mod Lipschitz property around one operation: deleting an edge or an
// isolated vertex never raises the modulator size, and re-adding raises it
// by at most 1 (vertex) or 2 (edge).
Verdict lipschitz_check_edge(const Graph& g, VertexId u, VertexId v, int eta,
                             std::size_t max_vertices = 14);
Verdict lipschitz_check_vertex(const Graph& g, VertexId v, int eta,
                               std::size_t max_vertices = 14);

} // namespace dynkern

#endif

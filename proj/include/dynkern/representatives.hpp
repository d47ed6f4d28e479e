#ifndef DYNKERN_REPRESENTATIVES_HPP
#define DYNKERN_REPRESENTATIVES_HPP

#include <map>
#include <optional>
#include <string>

#include "dynkern/tables.hpp"

namespace dynkern {

// One protrusion replacement gadget: the smallest enumerated graph whose
// normalized table equals the key, together with its raw minimum cost.
struct RepEntry {
    ProblemTable table; // normalized; the class signature
    BoundariedGraph graph;
    long long shift = 0; // raw minimum over the table before normalization
};

struct SynthStats {
    std::size_t graphs_enumerated = 0;
    std::size_t classes = 0;
    std::size_t max_rep_vertices = 0; // the empirical c(t)
};

class RepresentativeStore {
public:
    RepresentativeStore() = default;
    RepresentativeStore(Plugin plugin, std::size_t t_max, std::size_t n_max)
        : plugin_(plugin), t_max_(t_max), n_max_(n_max) {}

    Plugin plugin() const { return plugin_; }
    std::size_t t_max() const { return t_max_; }
    std::size_t n_max() const { return n_max_; }
    std::size_t size() const { return entries_.size(); }

    const RepEntry* lookup(const ProblemTable& normalized) const;
    const std::map<ProblemTable, RepEntry>& entries() const { return entries_; }

    // Every stored (rep, table, shift) re-verified by direct enumeration.
    bool self_verify() const;

    std::string serialize() const;
    static RepresentativeStore deserialize(const std::string& text);
    void save(const std::string& path) const;
    static RepresentativeStore load(const std::string& path);

    // Enumerates all boundaried graphs on up to n_max vertices with boundary
    // sizes up to t_max (boundary = lowest-id vertices, which covers every
    // class up to boundary-order-preserving isomorphism) and keeps one
    // smallest representative per normalized table.
    static RepresentativeStore synthesize(Plugin plugin, std::size_t t_max, std::size_t n_max,
                                          std::size_t graph_budget = 3'000'000,
                                          SynthStats* stats = nullptr);

private:
    Plugin plugin_ = Plugin::VertexCover;
    std::size_t t_max_ = 0, n_max_ = 0;
    std::map<ProblemTable, RepEntry> entries_;
};

} // namespace dynkern

#endif

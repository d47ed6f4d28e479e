#include "dynkern/chips.hpp"

#include <algorithm>
#include <sstream>

namespace dynkern {

namespace {

void sls_recurse(const Hypergraph& g, HyperedgeSet i, VertexSet x, std::size_t p, std::size_t s,
                 std::size_t k, std::vector<HyperedgeSet>& out, std::uint64_t* work) {
    if (work) ++*work;
    if (i.size() > p || x.size() > k) return;
    BoundaryResult br = boundary(g, i);
    if (br.vertex_set.size() > s) return;
    for (VertexId v : x) {
        if (!br.vertex_set.count(v)) return;            // x must sit on V(i)
        if (!br.boundary.count(v)) return;              // x meets int(i)
    }
    if (x == br.boundary) {
        out.push_back(i);
        return;
    }
    VertexId pick = 0;
    bool found = false;
    for (VertexId v : br.boundary)
        if (!x.count(v)) {
            pick = v;
            found = true;
            break;
        }
    if (!found) return;
    // branch 1: pick stays on the boundary
    {
        VertexSet x2 = x;
        x2.insert(pick);
        sls_recurse(g, i, std::move(x2), p, s, k, out, work);
    }
    // branch 2: pick becomes internal, so all its edges join
    const auto& inc = g.incident(pick);
    if (inc.size() <= p) {
        HyperedgeSet i2 = i;
        for (EdgeId e : inc) i2.insert(e);
        if (i2.size() <= p) sls_recurse(g, std::move(i2), std::move(x), p, s, k, out, work);
    }
}

} // namespace

std::vector<HyperedgeSet> static_local_search(const Hypergraph& g, const HyperedgeSet& i,
                                              const VertexSet& x, std::size_t p, std::size_t s,
                                              std::size_t k, std::uint64_t* work) {
    if (i.empty()) throw PreconditionError("static_local_search: I must be non-empty");
    std::vector<HyperedgeSet> out;
    sls_recurse(g, i, x, p, s, k, out, work);
    return out;
}

ChipIndex::ChipIndex(ChipParams params, ChipOracle oracle)
    : params_(params), oracle_(std::move(oracle)) {
    params_.validate();
}

ChipIndex::BKey ChipIndex::key_of(const VertexSet& b) { return BKey(b.begin(), b.end()); }

bool ChipIndex::is_chip(const HyperedgeSet& z) const {
    if (z.empty() || z.size() > params_.s2) return false;
    BoundaryResult br = boundary(g_, z);
    if (br.boundary.size() > params_.k) return false;
    if (!is_internally_connected(g_, z)) return false;
    ++work_;
    if (memo_) {
        auto it = memo_->find(z);
        if (it != memo_->end()) return it->second;
        bool r = oracle_(z, br.boundary);
        (*memo_)[z] = r;
        return r;
    }
    return oracle_(z, br.boundary);
}

void ChipIndex::insert_chip(const HyperedgeSet& z) {
    BKey key = key_of(boundary(g_, z).boundary);
    auto loc = location_.find(z);
    if (loc != location_.end()) {
        if (loc->second == key) return; // duplicate-insertion guard
        remove_chip_exact(z);
    }
    Group& grp = groups_[key];
    heap_.erase({grp.volume, key});
    grp.chips.insert(z);
    grp.volume += z.size();
    heap_.insert({grp.volume, key});
    location_[z] = key;
    for (EdgeId e : z) by_edge_[e].insert(z);
}

void ChipIndex::remove_chip_exact(const HyperedgeSet& z) {
    auto loc = location_.find(z);
    if (loc == location_.end()) return;
    const BKey& key = loc->second;
    auto it = groups_.find(key);
    if (it != groups_.end()) {
        Group& grp = it->second;
        heap_.erase({grp.volume, key});
        grp.chips.erase(z);
        grp.volume -= z.size();
        if (grp.chips.empty())
            groups_.erase(it);
        else
            heap_.insert({grp.volume, key});
    }
    for (EdgeId e : z) {
        auto be = by_edge_.find(e);
        if (be != by_edge_.end()) {
            be->second.erase(z);
            if (be->second.empty()) by_edge_.erase(be);
        }
    }
    location_.erase(loc);
}

std::vector<HyperedgeSet> ChipIndex::enumerate_chips_containing(const HyperedgeSet& i,
                                                                const VertexSet& x,
                                                                std::size_t relaxed_k) const {
    std::size_t rk = std::max<std::size_t>(g_.rank(), 1);
    std::vector<HyperedgeSet> cands =
        static_local_search(g_, i, x, params_.s2, rk * params_.s2, relaxed_k, &work_);
    std::vector<HyperedgeSet> out;
    for (auto& z : cands)
        if (is_chip(z)) out.push_back(std::move(z));
    return out;
}

void ChipIndex::on_add_vertex(VertexId v) { g_.add_vertex(v); }

void ChipIndex::on_delete_vertex(VertexId v) { g_.delete_vertex(v); }

void ChipIndex::on_add_hyperedge(EdgeId e, const std::vector<VertexId>& verts) {
    std::map<HyperedgeSet, bool> memo;
    memo_ = &memo;
    // affected chips have an internal vertex on V(e): exactly those with
    // all of some v's edges inside; remove them via the reverse index
    for (VertexId v : verts) {
        if (!g_.has_vertex(v)) continue;
        const auto& inc = g_.incident(v);
        if (inc.empty() || inc.size() > params_.s2) continue;
        EdgeId probe = *inc.begin();
        auto be = by_edge_.find(probe);
        if (be == by_edge_.end()) continue;
        std::vector<HyperedgeSet> affected;
        for (const HyperedgeSet& z : be->second) {
            bool internal = true;
            for (EdgeId f : inc)
                if (!z.count(f)) internal = false;
            if (internal) affected.push_back(z);
        }
        for (const HyperedgeSet& z : affected) remove_chip_exact(z);
    }
    g_.add_hyperedge_with_id(e, verts);
    // re-insert survivors with their new boundary, then chips containing e
    for (VertexId v : g_.edge_vertices(e)) {
        const auto& inc = g_.incident(v);
        if (inc.size() < 2 || inc.size() - 1 > params_.s2) continue;
        HyperedgeSet seed;
        for (EdgeId f : inc)
            if (f != e) seed.insert(f);
        for (const HyperedgeSet& z : enumerate_chips_containing(seed, {v}, params_.k))
            insert_chip(z);
    }
    for (const HyperedgeSet& z : enumerate_chips_containing({e}, {}, params_.k)) insert_chip(z);
    memo_ = nullptr;
}

void ChipIndex::on_delete_hyperedge(EdgeId e) {
    std::map<HyperedgeSet, bool> memo;
    memo_ = &memo;
    // chips containing e die
    {
        auto be = by_edge_.find(e);
        if (be != by_edge_.end()) {
            std::vector<HyperedgeSet> dying(be->second.begin(), be->second.end());
            for (const HyperedgeSet& z : dying) remove_chip_exact(z);
        }
    }
    // A set can newly become a chip (or change its group) only when some
    // v in V(e) turns interior, i.e. all of v's remaining edges lie inside
    // it. Enumerating in the post-state around those seeds finds every such
    // set; the pre-state relaxed-lambda search of the source construction
    // can miss sets whose pre-state internal components do not all meet one
    // seed, so the post-state view is used here.
    std::vector<VertexId> everts = g_.edge_vertices(e);
    g_.delete_hyperedge(e);
    std::size_t rk = std::max<std::size_t>(g_.rank(), 1);
    for (VertexId v : everts) {
        const auto& inc = g_.incident(v);
        if (inc.empty() || inc.size() > params_.s2) continue;
        HyperedgeSet seed(inc.begin(), inc.end());
        for (const HyperedgeSet& z :
             static_local_search(g_, seed, {}, params_.s2, rk * params_.s2, params_.k, &work_)) {
            if (!is_internally_connected(g_, z)) continue;
            remove_chip_exact(z); // possibly filed under a stale boundary
            VertexSet newbd = boundary(g_, z).boundary;
            ++work_;
            bool pass;
            auto it = memo.find(z);
            if (it != memo.end()) {
                pass = it->second;
            } else {
                pass = oracle_(z, newbd);
                memo[z] = pass;
            }
            if (pass) insert_chip(z);
        }
    }
    memo_ = nullptr;
}

void ChipIndex::apply(const HgOp& op) {
    switch (op.kind) {
        case HgOp::Kind::AddVertex: on_add_vertex(op.vertex); break;
        case HgOp::Kind::DeleteVertex: on_delete_vertex(op.vertex); break;
        case HgOp::Kind::AddHyperedge: on_add_hyperedge(op.edge, op.verts); break;
        case HgOp::Kind::DeleteHyperedge: on_delete_hyperedge(op.edge); break;
    }
}

void ChipIndex::apply_seq(const OperationSeq& seq) {
    for (const auto& op : seq.ops) apply(op);
}

std::optional<HyperedgeSet> ChipIndex::query() const {
    if (heap_.empty()) return std::nullopt;
    auto [vol, key] = *heap_.rbegin();
    if (vol < params_.s1) return std::nullopt;
    const Group& grp = groups_.at(key);
    std::size_t scanned = 0;
    std::vector<const HyperedgeSet*> small;
    std::size_t small_vol = 0;
    for (const HyperedgeSet& z : grp.chips) {
        if (++scanned > params_.s2) break;
        if (2 * z.size() >= params_.s1) return z;
        small.push_back(&z);
        small_vol += z.size();
        if (2 * small_vol >= params_.s1) break;
    }
    if (2 * small_vol < params_.s1) return std::nullopt;
    HyperedgeSet c;
    for (const HyperedgeSet* z : small)
        for (EdgeId e : *z)
            if (!c.insert(e).second)
                throw InvariantViolation("chip query: equal-boundary chips overlap");
    return c;
}

std::set<HyperedgeSet> ChipIndex::all_chips_bruteforce() const {
    std::vector<EdgeId> es = g_.edges();
    if (es.size() > 20) throw SizeLimitExceeded("all_chips_bruteforce: too many edges");
    std::set<HyperedgeSet> out;
    for (std::uint64_t m = 1; m < (1ull << es.size()); ++m) {
        HyperedgeSet z;
        for (std::size_t i = 0; i < es.size(); ++i)
            if (m & (1ull << i)) z.insert(es[i]);
        if (is_chip(z)) out.insert(z);
    }
    return out;
}

std::set<HyperedgeSet> ChipIndex::indexed_chips() const {
    std::set<HyperedgeSet> out;
    for (const auto& [key, grp] : groups_) {
        (void)key;
        for (const auto& z : grp.chips) out.insert(z);
    }
    return out;
}

bool ChipIndex::equals_bruteforce() const {
    if (indexed_chips() != all_chips_bruteforce()) return false;
    for (const auto& [key, grp] : groups_) {
        std::size_t vol = 0;
        for (const auto& z : grp.chips) {
            vol += z.size();
            if (key_of(boundary(g_, z).boundary) != key) return false;
        }
        if (vol != grp.volume || !heap_.count({vol, key})) return false;
    }
    return heap_.size() == groups_.size();
}

std::size_t ChipIndex::chip_count() const {
    std::size_t n = 0;
    for (const auto& [key, grp] : groups_) {
        (void)key;
        n += grp.chips.size();
    }
    return n;
}

std::string ChipIndex::debug_dump() const {
    std::ostringstream os;
    for (const auto& [key, grp] : groups_) {
        os << "group {";
        for (std::size_t i = 0; i < key.size(); ++i) os << (i ? " " : "") << key[i];
        os << "} vol " << grp.volume << ":";
        for (const auto& z : grp.chips) {
            os << " {";
            bool first = true;
            for (EdgeId e : z) {
                os << (first ? "" : " ") << e;
                first = false;
            }
            os << "}";
        }
        os << "\n";
    }
    return os.str();
}

} // namespace dynkern

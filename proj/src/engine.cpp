#include "dynkern/engine.hpp"

#include <algorithm>
#include <functional>

#include "dynkern/treewidth.hpp"

namespace dynkern {

void EngineConfig::validate() const {
    BalanceConfig bc{c};
    bc.validate();
    if (s1 < 2 || s2 < s1) throw ConfigError("engine config: need 2 <= s1 <= s2");
    if (k < static_cast<std::size_t>(omega))
        throw ConfigError("engine config: k >= omega required");
    if (s2 > bc.max_degree()) throw ConfigError("engine config: s2 exceeds the degree bound");
    if (omega < 0) throw ConfigError("engine config: omega >= 0");
}

Engine::Engine(EngineConfig cfg, std::shared_ptr<const RepresentativeStore> store)
    : cfg_(std::move(cfg)),
      store_(std::move(store)),
      bal_(d_, cfg_.balance()),
      chips_(
          ChipParams{cfg_.s1, cfg_.s2, cfg_.k},
          // the itw oracle over root children; a budget overrun answers
          // false, which keeps the oracle a total function of (S, bd(S))
          [this](const HyperedgeSet& s, const VertexSet& bd) -> bool {
              const auto& rn = d_.node(d_.root());
              std::vector<std::uint64_t> stamps;
              stamps.reserve(s.size());
              for (EdgeId te : s) {
                  auto it = rn.torso_to_nbr.find(te);
                  if (it == rn.torso_to_nbr.end()) return false; // mid-sequence stale label
                  stamps.push_back(d_.stamp_of(it->second));
              }
              auto key = std::make_pair(s, bd);
              auto hit = oracle_cache_.find(key);
              if (hit != oracle_cache_.end() && hit->second.second == stamps)
                  return hit->second.first;
              bool answer;
              try {
                  answer =
                      itw_decider(d_, s, cfg_.omega, cfg_.itw_materialize_cap, cfg_.itw_dp_cap);
              } catch (const SizeLimitExceeded&) {
                  answer = false;
              }
              if (oracle_cache_.size() > 100000) oracle_cache_.clear();
              oracle_cache_[std::move(key)] = {answer, std::move(stamps)};
              return answer;
          }) {
    cfg_.validate();
    for (Plugin p : cfg_.runs) runs_.emplace(p, PluginRun(p, cfg_.width_cap(p)));
    if (!runs_.count(cfg_.kernel_plugin))
        runs_.emplace(cfg_.kernel_plugin, PluginRun(cfg_.kernel_plugin, cfg_.width_cap(cfg_.kernel_plugin)));
    kernel_.emplace(cfg_.kernel_plugin, store_.get());
}

const PluginRun& Engine::run(Plugin p) const {
    auto it = runs_.find(p);
    if (it == runs_.end()) throw PreconditionError("engine: plugin run not maintained");
    return it->second;
}

EdgeId Engine::singleton_edge(VertexId v) const {
    auto it = singleton_.find(v);
    if (it == singleton_.end()) throw MissingVertex("engine: no singleton hyperedge for vertex");
    return it->second;
}

EdgeId Engine::pair_edge(VertexId u, VertexId v) const {
    auto it = pair_.find(GEdge(u, v));
    if (it == pair_.end()) throw MissingEdge("engine: no pair hyperedge for edge");
    return it->second;
}

std::size_t Engine::max_root_child_depth() const {
    std::size_t best = 0;
    for (NodeId c : d_.node(d_.root()).children)
        best = std::max(best, d_.subtree_depth(c));
    return best;
}

void Engine::sync_after_batch(BatchReport&& batch, ChangeReport* rep) {
    // chip index first, so later queries see the current torso
    chips_.apply_seq(batch.root_torso_ops);
    std::set<NodeId> dirty = batch.trace;
    for (NodeId t : batch.edges_dirty) dirty.insert(t);
    for (auto& [p, run] : runs_) {
        (void)p;
        run.repair_run(d_, dirty);
    }
    rep->torso_ops.append(batch.root_torso_ops);
    for (auto& e : batch.edges_root_delta) rep->edges_root_delta.push_back(e);
    for (auto& v : batch.bag_root_delta) rep->bag_root_delta.push_back(v);
    rep->work_units += batch.work_units;
    rep->rotations += batch.rotations.rots.size();
}

bool Engine::merge_safe(const HyperedgeSet& b) const {
    // route 1: wl <= 3*(tw+1) <= 3*(itw + lambda + 1), all quantities known
    // for reduce-loop candidates
    std::size_t lam = lambda(d_.node(d_.root()).torso, b);
    bool itw_ok = false;
    try {
        itw_ok = itw_decider(d_, b, cfg_.omega, cfg_.itw_materialize_cap, cfg_.itw_dp_cap);
    } catch (const SizeLimitExceeded&) {
        itw_ok = false;
    }
    if (itw_ok && 3 * (static_cast<std::size_t>(cfg_.omega) + lam + 1) <=
                      static_cast<std::size_t>(cfg_.c))
        return true;
    // route 2: exact well-linked number at oracle scale
    HyperedgeSet leaves;
    const auto& rn = d_.node(d_.root());
    for (EdgeId te : b) {
        NodeId c = rn.torso_to_nbr.at(te);
        for (EdgeId he : d_.leaf_edges_below(c)) leaves.insert(he);
        if (leaves.size() > cfg_.oracle_scale) break;
    }
    if (leaves.size() <= cfg_.oracle_scale) {
        return well_linked_number(d_.support(), leaves, cfg_.oracle_scale) <=
               static_cast<std::size_t>(cfg_.c);
    }
    // route 3: wl <= 3*(tw+1) with the exact treewidth of the merged subgraph
    Graph sub;
    std::size_t budget = cfg_.itw_materialize_cap;
    for (EdgeId he : leaves) {
        const auto& vs = d_.support().edge_vertices(he);
        for (VertexId v : vs) {
            if (!sub.has_vertex(v)) {
                if (budget-- == 0) return false;
                sub.add_vertex(v);
            }
        }
        if (vs.size() == 2 && !sub.has_edge(vs[0], vs[1])) sub.add_edge(vs[0], vs[1]);
    }
    int need = cfg_.c / 3 - 1;
    try {
        return treewidth_at_most(sub, need, cfg_.itw_dp_cap);
    } catch (const SizeLimitExceeded&) {
        return false;
    }
}

void Engine::merge(const HyperedgeSet& b) {
    const auto& rn = d_.node(d_.root());
    if (b.size() < 2) throw PreconditionError("merge: |A| >= 2 required");
    if (b.size() > cfg_.s2) throw PreconditionError("merge: |A| exceeds s2");
    BalanceConfig bc = cfg_.balance();
    if (b.size() > bc.max_degree()) throw PreconditionError("merge: |A| exceeds 2^{2c}+1");
    if (rn.children.size() < b.size() + 2)
        throw PreconditionError("merge: complement must keep two root children");
    for (EdgeId te : b)
        if (!rn.torso_to_nbr.count(te)) throw PreconditionError("merge: unknown torso edge");
    auto [w, ops] = d_.split(d_.root(), b);
    (void)ops;
    bal_.rebalance_subtree(w);
}

std::size_t Engine::reduce_root_degree(std::size_t zeta, ChangeReport* rep) {
    std::size_t budget = zeta + 2 * cfg_.merge_budget;
    std::size_t merges = 0;
    while (merges < budget) {
        auto cand = chips_.query();
        if (!cand) break;
        // refine to a well-linked subset inside torso(r)
        auto parts = partition_well_linked(d_.node(d_.root()).torso, *cand, &bal_.counters());
        const HyperedgeSet* best = nullptr;
        for (const auto& part : parts)
            if (part.size() >= 2 && (!best || part.size() > best->size())) best = &part;
        if (!best) {
            ++metrics_.merges_skipped;
            if (rep) ++rep->merges_skipped;
            break;
        }
        if (d_.node(d_.root()).children.size() < best->size() + 2) {
            ++metrics_.merges_skipped;
            if (rep) ++rep->merges_skipped;
            break;
        }
        if (!merge_safe(*best)) {
            ++metrics_.merges_skipped;
            if (rep) ++rep->merges_skipped;
            break;
        }
        d_.begin_batch();
        merge(*best);
        BatchReport batch = d_.finish_batch();
        if (rep) sync_after_batch(std::move(batch), rep);
        ++merges;
        ++metrics_.merges;
        if (rep) ++rep->merges;
    }
    return merges;
}

ChangeReport Engine::run_update(const std::function<void()>& structural) {
    ChangeReport rep;
    std::size_t deg_before = root_degree();
    d_.begin_batch();
    structural();
    BatchReport batch = d_.finish_batch();
    sync_after_batch(std::move(batch), &rep);
    std::size_t deg_after = root_degree();
    std::size_t zeta = deg_after > deg_before ? deg_after - deg_before : 0;
    reduce_root_degree(zeta, &rep);
    if (rep.torso_ops.size() > cfg_.ops_ceiling)
        throw InvariantViolation("engine: torso delta exceeds the configured ceiling");
    rep.kernel_delta = kernel_->apply_change(d_, run(cfg_.kernel_plugin), rep.torso_ops,
                                             rep.edges_root_delta);
    metrics_.updates += 1;
    metrics_.rotations += rep.rotations;
    metrics_.work_units += rep.work_units;
    metrics_.kernel_ops += rep.kernel_delta.size();
    if (cfg_.paranoid) {
        // delete-on-change: a surviving torso label's subtree must be
        // untouched unless the sequence deleted (and re-added) the label
        std::set<EdgeId> deleted;
        for (const HgOp& op : rep.torso_ops.ops)
            if (op.kind == HgOp::Kind::DeleteHyperedge) deleted.insert(op.edge);
        const auto& rn = d_.node(d_.root());
        for (const auto& [te, child] : rn.torso_to_nbr) {
            auto it = label_stamps_.find(te);
            if (it != label_stamps_.end() && !deleted.count(te) &&
                it->second != d_.stamp_of(child))
                throw InvariantViolation("paranoid: subtree changed without label deletion");
        }
        label_stamps_.clear();
        for (const auto& [te, child] : rn.torso_to_nbr)
            label_stamps_[te] = d_.stamp_of(child);
    }
    maybe_paranoid();
    return rep;
}

ChangeReport Engine::add_vertex(VertexId v) {
    if (g_.has_vertex(v)) throw DuplicateVertex("engine add_vertex: vertex exists");
    return run_update([&] {
        auto [leaf, ops] = d_.insert_leaf(d_.root(), {v}, {});
        (void)ops;
        singleton_[v] = d_.node(leaf).leaf_edge;
        g_.add_vertex(v);
    });
}

ChangeReport Engine::delete_vertex(VertexId v) {
    if (!g_.has_vertex(v)) throw MissingVertex("engine delete_vertex: no such vertex");
    if (g_.degree(v) != 0) throw NonIsolatedVertex("engine delete_vertex: vertex not isolated");
    EdgeId ev = singleton_edge(v);
    return run_update([&] {
        bal_.isolate({ev});
        d_.delete_leaf(d_.leaf_of(ev));
        singleton_.erase(v);
        g_.delete_vertex(v);
    });
}

ChangeReport Engine::add_edge(VertexId u, VertexId v) {
    if (u == v) throw PreconditionError("engine add_edge: loop");
    if (!g_.has_vertex(u) || !g_.has_vertex(v)) throw MissingVertex("engine add_edge: endpoint");
    if (g_.has_edge(u, v)) throw DuplicateEdge("engine add_edge: edge exists");
    if ((g_.num_edges() + 1) > cfg_.density_factor * std::max<std::size_t>(g_.num_vertices(), 1))
        throw PreconditionError("engine add_edge: density tripwire");
    EdgeId eu = singleton_edge(u), ev = singleton_edge(v);
    return run_update([&] {
        bal_.isolate({eu, ev});
        auto [leaf, ops] = d_.insert_leaf(
            d_.root(), {u, v}, {d_.leaf_of(eu), d_.leaf_of(ev)});
        (void)ops;
        pair_[GEdge(u, v)] = d_.node(leaf).leaf_edge;
        g_.add_edge(u, v);
    });
}

ChangeReport Engine::delete_edge(VertexId u, VertexId v) {
    if (!g_.has_edge(u, v)) throw MissingEdge("engine delete_edge: no such edge");
    EdgeId eu = singleton_edge(u), ev = singleton_edge(v), euv = pair_edge(u, v);
    return run_update([&] {
        bal_.isolate({eu, ev, euv});
        d_.delete_leaf(d_.leaf_of(euv));
        pair_.erase(GEdge(u, v));
        g_.delete_edge(u, v);
    });
}

void Engine::maybe_paranoid() {
    if (!cfg_.paranoid) return;
    // torso mirror equality
    if (!(chips_.mirror() == d_.node(d_.root()).torso))
        throw InvariantViolation("paranoid: chip mirror diverged from torso(r)");
    for (const auto& [p, run] : runs_) {
        (void)p;
        if (!run.equals_recompute(d_))
            throw InvariantViolation("paranoid: plugin run diverged from recomputation");
    }
    if (d_.node(d_.root()).torso.num_edges() <= cfg_.oracle_scale) {
        if (!chips_.equals_bruteforce())
            throw InvariantViolation("paranoid: chip index diverged from brute force");
    }
    KernelState fresh = KernelState::assemble(d_, run(cfg_.kernel_plugin), cfg_.kernel_plugin,
                                              store_.get());
    if (fresh.signature() != kernel_->signature())
        throw InvariantViolation("paranoid: kernel diverged from reassembly");
}

} // namespace dynkern

#include "dynkern/tables.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dynkern {

namespace {

int add_cost(int a, int b) { return (a >= kInfCost || b >= kInfCost) ? kInfCost : a + b; }

std::size_t pow_sz(std::size_t base, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= base;
    return r;
}

} // namespace

void BoundariedGraph::normalize_boundary() {
    std::sort(boundary.begin(), boundary.end());
    boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
    for (VertexId v : boundary)
        if (!graph.has_vertex(v)) throw PreconditionError("boundaried graph: boundary not in V");
}

Graph glue_u(const BoundariedGraph& x, const BoundariedGraph& y) {
    if (x.t() != y.t()) {
        // pad the smaller label set with fresh isolated boundary vertices;
        // gluing only identifies common labels
        BoundariedGraph a = x, b = y;
        while (a.t() < b.t()) {
            auto vs = a.graph.vertices();
            VertexId v = vs.empty() ? 0 : vs.back() + 1;
            a.graph.add_vertex(v);
            a.boundary.push_back(v);
            a.normalize_boundary();
        }
        while (b.t() < a.t()) {
            auto vs = b.graph.vertices();
            VertexId v = vs.empty() ? 0 : vs.back() + 1;
            b.graph.add_vertex(v);
            b.boundary.push_back(v);
            b.normalize_boundary();
        }
        return glue_u(a, b);
    }
    return glue_b(x, y).graph;
}

BoundariedGraph glue_b(const BoundariedGraph& x, const BoundariedGraph& y) {
    if (x.t() != y.t()) throw PreconditionError("glue_b: label sets differ");
    BoundariedGraph out;
    out.graph = x.graph;
    VertexId fresh = 0;
    for (VertexId v : x.graph.vertices()) fresh = std::max(fresh, v + 1);
    std::map<VertexId, VertexId> remap;
    for (std::size_t i = 0; i < y.boundary.size(); ++i) remap[y.boundary[i]] = x.boundary[i];
    for (VertexId v : y.graph.vertices())
        if (!remap.count(v)) {
            remap[v] = fresh++;
            out.graph.ensure_vertex(remap[v]);
        }
    for (const GEdge& e : y.graph.edges()) {
        VertexId a = remap[e.u], b = remap[e.v];
        if (!out.graph.has_edge(a, b)) out.graph.add_edge(a, b);
    }
    out.boundary = x.boundary;
    out.normalize_boundary();
    return out;
}

const char* plugin_name(Plugin p) { return p == Plugin::VertexCover ? "vc" : "ds"; }

std::optional<Plugin> plugin_from_name(const std::string& name) {
    if (name == "vc") return Plugin::VertexCover;
    if (name == "ds") return Plugin::DominatingSet;
    return std::nullopt;
}

std::size_t ProblemTable::state(std::size_t idx, std::size_t pos) const {
    return (idx / pow_sz(arity(), pos)) % arity();
}

int ProblemTable::normalize() {
    int mn = kInfCost;
    for (int c : cost) mn = std::min(mn, c);
    if (mn >= kInfCost || mn == 0) return 0;
    for (int& c : cost)
        if (c < kInfCost) c -= mn;
    return mn;
}

bool ProblemTable::all_infinite() const {
    for (int c : cost)
        if (c < kInfCost) return false;
    return true;
}

bool ProblemTable::operator<(const ProblemTable& o) const {
    if (plugin != o.plugin) return plugin < o.plugin;
    if (t != o.t) return t < o.t;
    return cost < o.cost;
}

std::string ProblemTable::to_string() const {
    std::ostringstream os;
    os << plugin_name(plugin) << ":" << t << ":";
    for (std::size_t i = 0; i < cost.size(); ++i) {
        if (i) os << ",";
        if (cost[i] >= kInfCost)
            os << "inf";
        else
            os << cost[i];
    }
    return os.str();
}

ProblemTable ProblemTable::from_string(const std::string& s) {
    ProblemTable tb;
    std::size_t c1 = s.find(':'), c2 = s.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        throw ParseError("table parse: bad format");
    auto p = plugin_from_name(s.substr(0, c1));
    if (!p) throw ParseError("table parse: bad plugin");
    tb.plugin = *p;
    tb.t = std::stoul(s.substr(c1 + 1, c2 - c1 - 1));
    std::string rest = s.substr(c2 + 1);
    std::istringstream is(rest);
    std::string item;
    while (std::getline(is, item, ','))
        tb.cost.push_back(item == "inf" ? kInfCost : std::stoi(item));
    if (tb.cost.size() != pow_sz(tb.arity(), tb.t)) throw ParseError("table parse: size mismatch");
    return tb;
}

ProblemTable table_introduce(const ProblemTable& tb, std::size_t pos) {
    if (pos > tb.t) throw PreconditionError("table_introduce: bad position");
    ProblemTable out;
    out.plugin = tb.plugin;
    out.t = tb.t + 1;
    std::size_t ar = tb.arity();
    out.cost.assign(pow_sz(ar, out.t), kInfCost);
    std::size_t lo = pow_sz(ar, pos);
    for (std::size_t idx = 0; idx < tb.size(); ++idx) {
        std::size_t base = (idx % lo) + (idx / lo) * lo * ar;
        if (tb.plugin == Plugin::VertexCover) {
            out.cost[base + 0 * lo] = tb.at(idx);              // out
            out.cost[base + 1 * lo] = add_cost(tb.at(idx), 1); // in
        } else {
            out.cost[base + 0 * lo] = add_cost(tb.at(idx), 1); // black
            out.cost[base + 1 * lo] = kInfCost;                // white: not dominated yet
            out.cost[base + 2 * lo] = tb.at(idx);              // grey
        }
    }
    return out;
}

ProblemTable table_forget(const ProblemTable& tb, std::size_t pos) {
    if (pos >= tb.t) throw PreconditionError("table_forget: bad position");
    ProblemTable out;
    out.plugin = tb.plugin;
    out.t = tb.t - 1;
    std::size_t ar = tb.arity();
    out.cost.assign(pow_sz(ar, out.t), kInfCost);
    std::size_t lo = pow_sz(ar, pos);
    for (std::size_t idx = 0; idx < tb.size(); ++idx) {
        std::size_t st = (idx / lo) % ar;
        if (tb.plugin == Plugin::DominatingSet && st == 2) continue; // grey may not leave
        std::size_t rest = (idx % lo) + (idx / (lo * ar)) * lo;
        out.cost[rest] = std::min(out.cost[rest], tb.at(idx));
    }
    return out;
}

ProblemTable table_apply_edge(const ProblemTable& tb, std::size_t pos_u, std::size_t pos_v) {
    if (pos_u >= tb.t || pos_v >= tb.t || pos_u == pos_v)
        throw PreconditionError("table_apply_edge: bad positions");
    ProblemTable out = tb;
    std::size_t ar = tb.arity();
    std::size_t lu = pow_sz(ar, pos_u), lv = pow_sz(ar, pos_v);
    if (tb.plugin == Plugin::VertexCover) {
        for (std::size_t idx = 0; idx < out.size(); ++idx) {
            std::size_t su = (idx / lu) % ar, sv = (idx / lv) % ar;
            if (su == 0 && sv == 0) out.cost[idx] = kInfCost; // uncovered edge
        }
    } else {
        // a black endpoint lets the other end upgrade grey -> white
        for (std::size_t idx = 0; idx < out.size(); ++idx) {
            std::size_t su = (idx / lu) % ar, sv = (idx / lv) % ar;
            if (sv == 0 && su == 1)
                out.cost[idx] = std::min(out.cost[idx], out.cost[idx + lu]);
        }
        for (std::size_t idx = 0; idx < out.size(); ++idx) {
            std::size_t su = (idx / lu) % ar, sv = (idx / lv) % ar;
            if (su == 0 && sv == 1)
                out.cost[idx] = std::min(out.cost[idx], out.cost[idx + lv]);
        }
    }
    return out;
}

ProblemTable table_join(const ProblemTable& tb, const ProblemTable& sub,
                        const std::vector<std::size_t>& sub_to_big) {
    if (tb.plugin != sub.plugin || sub_to_big.size() != sub.t)
        throw PreconditionError("table_join: mismatched inputs");
    ProblemTable out;
    out.plugin = tb.plugin;
    out.t = tb.t;
    std::size_t ar = tb.arity();
    out.cost.assign(tb.size(), kInfCost);
    std::vector<std::size_t> big_lo(sub.t), sub_lo(sub.t);
    for (std::size_t i = 0; i < sub.t; ++i) {
        big_lo[i] = pow_sz(ar, sub_to_big[i]);
        sub_lo[i] = pow_sz(ar, i);
    }
    for (std::size_t idx = 0; idx < tb.size(); ++idx) {
        if (tb.at(idx) >= kInfCost) continue;
        for (std::size_t sidx = 0; sidx < sub.size(); ++sidx) {
            if (sub.at(sidx) >= kInfCost) continue;
            std::size_t out_idx = idx;
            int overlap = 0;
            bool ok = true;
            for (std::size_t i = 0; i < sub.t; ++i) {
                std::size_t sb = (sidx / sub_lo[i]) % ar;
                std::size_t bb = (idx / big_lo[i]) % ar;
                std::size_t res;
                if (tb.plugin == Plugin::VertexCover) {
                    if (sb != bb) {
                        ok = false;
                        break;
                    }
                    res = bb;
                    if (bb == 1) ++overlap;
                } else {
                    if ((sb == 0) != (bb == 0)) {
                        ok = false;
                        break;
                    }
                    if (sb == 0) {
                        res = 0;
                        ++overlap;
                    } else {
                        res = (sb == 1 || bb == 1) ? 1 : 2; // white wins over grey
                    }
                }
                out_idx += (res - bb) * big_lo[i];
            }
            if (!ok) continue;
            int c = add_cost(tb.at(idx), sub.at(sidx));
            if (c < kInfCost) c -= overlap;
            out.cost[out_idx] = std::min(out.cost[out_idx], c);
        }
    }
    return out;
}

ProblemTable table_of(Plugin p, const BoundariedGraph& bg, std::size_t max_vertices) {
    std::vector<VertexId> verts = bg.graph.vertices();
    std::size_t n = verts.size();
    if (n > max_vertices) throw SizeLimitExceeded("table_of: too many vertices");
    std::map<VertexId, std::size_t> vidx;
    for (std::size_t i = 0; i < n; ++i) vidx[verts[i]] = i;
    std::vector<std::size_t> bpos(n, SIZE_MAX);
    for (std::size_t i = 0; i < bg.boundary.size(); ++i) bpos[vidx.at(bg.boundary[i])] = i;

    ProblemTable tb;
    tb.plugin = p;
    tb.t = bg.t();
    std::size_t ar = tb.arity();
    tb.cost.assign(pow_sz(ar, tb.t), kInfCost);

    std::vector<std::uint32_t> nbr(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (VertexId w : bg.graph.neighbors(verts[i])) nbr[i] |= 1u << vidx.at(w);

    for (std::uint32_t sol = 0; sol < (1u << n); ++sol) {
        int c = __builtin_popcount(sol);
        if (p == Plugin::VertexCover) {
            bool covers = true;
            for (std::size_t i = 0; i < n && covers; ++i)
                if (!(sol & (1u << i)) && (nbr[i] & ~sol)) covers = false;
            if (!covers) continue;
            std::size_t idx = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (bpos[i] != SIZE_MAX && (sol & (1u << i))) idx += pow_sz(ar, bpos[i]);
            tb.cost[idx] = std::min(tb.cost[idx], c);
        } else {
            std::uint32_t dominated = sol;
            for (std::size_t i = 0; i < n; ++i)
                if (sol & (1u << i)) dominated |= nbr[i];
            bool interior_ok = true;
            for (std::size_t i = 0; i < n; ++i)
                if (bpos[i] == SIZE_MAX && !(dominated & (1u << i))) interior_ok = false;
            if (!interior_ok) continue;
            // black if chosen; otherwise grey always allowed and white
            // additionally when dominated from inside
            std::size_t base = 0;
            std::vector<std::size_t> free_white;
            for (std::size_t i = 0; i < n; ++i) {
                if (bpos[i] == SIZE_MAX) continue;
                if (sol & (1u << i)) continue; // state 0, contributes nothing
                base += 2 * pow_sz(ar, bpos[i]);
                if (dominated & (1u << i)) free_white.push_back(bpos[i]);
            }
            for (std::uint32_t m = 0; m < (1u << free_white.size()); ++m) {
                std::size_t idx = base;
                for (std::size_t j = 0; j < free_white.size(); ++j)
                    if (m & (1u << j)) idx -= pow_sz(ar, free_white[j]); // grey -> white
                tb.cost[idx] = std::min(tb.cost[idx], c);
            }
        }
    }
    return tb;
}

int opt_by_table(Plugin p, const Graph& g, std::size_t max_vertices) {
    BoundariedGraph bg;
    bg.graph = g;
    ProblemTable tb = table_of(p, bg, max_vertices);
    return tb.cost[0] >= kInfCost ? kInfCost : tb.cost[0];
}

} // namespace dynkern

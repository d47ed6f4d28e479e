#include "dynkern/representatives.hpp"

#include <fstream>
#include <sstream>

namespace dynkern {

const RepEntry* RepresentativeStore::lookup(const ProblemTable& normalized) const {
    auto it = entries_.find(normalized);
    return it == entries_.end() ? nullptr : &it->second;
}

bool RepresentativeStore::self_verify() const {
    for (const auto& [key, entry] : entries_) {
        ProblemTable tb = table_of(plugin_, entry.graph);
        long long shift = tb.normalize();
        if (!(tb == key)) return false;
        if (shift != entry.shift) return false;
        if (entry.graph.t() != key.t) return false;
        if (entry.graph.graph.num_vertices() > n_max_) return false;
    }
    return true;
}

std::string RepresentativeStore::serialize() const {
    std::ostringstream os;
    os << "repstore v1 plugin=" << plugin_name(plugin_) << " t_max=" << t_max_
       << " n_max=" << n_max_ << "\n";
    for (const auto& [key, entry] : entries_) {
        os << "rep shift=" << entry.shift << " table=" << key.to_string() << " verts=";
        auto vs = entry.graph.graph.vertices();
        for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? "," : "") << vs[i];
        os << " boundary=";
        for (std::size_t i = 0; i < entry.graph.boundary.size(); ++i)
            os << (i ? "," : "") << entry.graph.boundary[i];
        os << " edges=";
        auto es = entry.graph.graph.edges();
        for (std::size_t i = 0; i < es.size(); ++i)
            os << (i ? "," : "") << es[i].u << "-" << es[i].v;
        os << "\n";
    }
    return os.str();
}

namespace {

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

std::string field_of(const std::string& line, const std::string& name) {
    std::string tag = name + "=";
    std::size_t at = line.find(tag);
    if (at == std::string::npos) throw ParseError("repstore: missing field " + name);
    std::size_t end = line.find(' ', at);
    return line.substr(at + tag.size(), end == std::string::npos ? end : end - at - tag.size());
}

} // namespace

RepresentativeStore RepresentativeStore::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line.rfind("repstore v1 ", 0) != 0)
        throw ParseError("repstore: bad header");
    auto plugin = plugin_from_name(field_of(line, "plugin"));
    if (!plugin) throw ParseError("repstore: bad plugin");
    RepresentativeStore store(*plugin, std::stoul(field_of(line, "t_max")),
                              std::stoul(field_of(line, "n_max")));
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("rep ", 0) != 0) throw ParseError("repstore: bad record");
        RepEntry entry;
        entry.shift = std::stoll(field_of(line, "shift"));
        entry.table = ProblemTable::from_string(field_of(line, "table"));
        std::string verts = field_of(line, "verts");
        if (!verts.empty())
            for (const auto& v : split_on(verts, ','))
                entry.graph.graph.add_vertex(std::stoul(v));
        std::string bnd = field_of(line, "boundary");
        if (!bnd.empty())
            for (const auto& v : split_on(bnd, ','))
                entry.graph.boundary.push_back(std::stoul(v));
        std::string edges = field_of(line, "edges");
        if (!edges.empty())
            for (const auto& e : split_on(edges, ',')) {
                auto uv = split_on(e, '-');
                if (uv.size() != 2) throw ParseError("repstore: bad edge");
                entry.graph.graph.add_edge(std::stoul(uv[0]), std::stoul(uv[1]));
            }
        entry.graph.normalize_boundary();
        store.entries_[entry.table] = std::move(entry);
    }
    return store;
}

void RepresentativeStore::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("repstore: cannot write " + path);
    out << serialize();
}

RepresentativeStore RepresentativeStore::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("repstore: cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return deserialize(ss.str());
}

RepresentativeStore RepresentativeStore::synthesize(Plugin plugin, std::size_t t_max,
                                                    std::size_t n_max, std::size_t graph_budget,
                                                    SynthStats* stats) {
    if (t_max > 4 || n_max > 8)
        throw BudgetExceeded("synthesize: t_max <= 4 and n_max <= 8 supported");
    RepresentativeStore store(plugin, t_max, n_max);
    std::size_t enumerated = 0;
    for (std::size_t t = 0; t <= t_max; ++t) {
        for (std::size_t n = std::max<std::size_t>(t, 1); n <= n_max; ++n) {
            std::size_t pairs = n * (n - 1) / 2;
            if (pairs >= 63) throw BudgetExceeded("synthesize: too many edge slots");
            for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
                if (++enumerated > graph_budget)
                    throw BudgetExceeded("synthesize: graph budget exceeded");
                BoundariedGraph bg;
                for (std::size_t v = 0; v < n; ++v) bg.graph.add_vertex(v);
                for (std::size_t v = 0; v < t; ++v) bg.boundary.push_back(v);
                std::size_t bit = 0;
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j, ++bit)
                        if (mask & (1ull << bit)) bg.graph.add_edge(i, j);
                ProblemTable tb = table_of(plugin, bg);
                long long shift = tb.normalize();
                auto it = store.entries_.find(tb);
                if (it == store.entries_.end()) {
                    store.entries_[tb] = RepEntry{tb, std::move(bg), shift};
                } else {
                    RepEntry& cur = it->second;
                    std::size_t cn = cur.graph.graph.num_vertices();
                    // smallest vertex count, then smallest shift; the
                    // enumeration order breaks remaining ties by edge mask
                    if (n < cn || (n == cn && shift < cur.shift))
                        cur = RepEntry{tb, std::move(bg), shift};
                }
            }
        }
    }
    if (stats) {
        stats->graphs_enumerated = enumerated;
        stats->classes = store.entries_.size();
        stats->max_rep_vertices = 0;
        for (const auto& [key, entry] : store.entries_) {
            (void)key;
            stats->max_rep_vertices =
                std::max(stats->max_rep_vertices, entry.graph.graph.num_vertices());
        }
    }
    return store;
}

} // namespace dynkern

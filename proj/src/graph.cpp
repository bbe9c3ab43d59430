#include "dynmwm/graph.hpp"

#include <algorithm>

namespace dynmwm {

EdgeKey make_key(Vertex a, Vertex b) {
    if (a == b) throw UpdateError("self-loop at vertex " + std::to_string(a));
    return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

std::string to_string(const EdgeKey& k) {
    return "(" + std::to_string(k.u) + "," + std::to_string(k.v) + ")";
}

WeightedEdge::WeightedEdge(Vertex a, Vertex b, Rational weight) : w(std::move(weight)) {
    EdgeKey k = make_key(a, b);
    u = k.u;
    v = k.v;
    if (w <= 0) throw UpdateError("non-positive weight on edge " + to_string(k));
}

UpdateEvent make_insert(Vertex u, Vertex v, Rational w, std::uint64_t seq) {
    return UpdateEvent{UpdateKind::insert, WeightedEdge(u, v, std::move(w)), seq};
}

UpdateEvent make_erase(Vertex u, Vertex v, Rational w, std::uint64_t seq) {
    return UpdateEvent{UpdateKind::erase, WeightedEdge(u, v, std::move(w)), seq};
}

DynamicGraph::DynamicGraph(std::size_t vertex_count) : adj_(vertex_count) {}

void DynamicGraph::ensure_vertex(Vertex v) {
    if (v >= adj_.size()) adj_.resize(static_cast<std::size_t>(v) + 1);
}

const Rational& DynamicGraph::weight(const EdgeKey& k) const {
    auto it = edges_.find(k);
    if (it == edges_.end()) throw UpdateError("edge " + to_string(k) + " not in graph");
    return it->second;
}

std::optional<Rational> DynamicGraph::find_weight(const EdgeKey& k) const {
    auto it = edges_.find(k);
    if (it == edges_.end()) return std::nullopt;
    return it->second;
}

void DynamicGraph::insert_edge(Vertex a, Vertex b, const Rational& w) {
    EdgeKey k = make_key(a, b);
    if (w <= 0) throw UpdateError("non-positive weight on edge " + to_string(k));
    if (edges_.count(k)) throw UpdateError("duplicate insert of edge " + to_string(k));
    ensure_vertex(k.v);
    edges_.emplace(k, w);
    adj_[k.u].insert(k.v);
    adj_[k.v].insert(k.u);
}

Rational DynamicGraph::erase_edge(Vertex a, Vertex b) {
    EdgeKey k = make_key(a, b);
    auto it = edges_.find(k);
    if (it == edges_.end()) throw UpdateError("delete of missing edge " + to_string(k));
    Rational w = it->second;
    edges_.erase(it);
    adj_[k.u].erase(k.v);
    adj_[k.v].erase(k.u);
    return w;
}

std::vector<WeightedEdge> DynamicGraph::edge_list() const {
    std::vector<WeightedEdge> out;
    out.reserve(edges_.size());
    for (const auto& [k, w] : edges_) out.emplace_back(k, w);
    return out;
}

const std::set<Vertex>& DynamicGraph::neighbors(Vertex v) const {
    static const std::set<Vertex> empty;
    return v < adj_.size() ? adj_[v] : empty;
}

std::size_t DynamicGraph::max_degree() const {
    std::size_t d = 0;
    for (const auto& s : adj_) d = std::max(d, s.size());
    return d;
}

Rational DynamicGraph::total_weight() const {
    Rational t = 0;
    for (const auto& [k, w] : edges_) t += w;
    return t;
}

std::optional<Rational> DynamicGraph::min_weight() const {
    std::optional<Rational> m;
    for (const auto& [k, w] : edges_)
        if (!m || w < *m) m = w;
    return m;
}

std::optional<Rational> DynamicGraph::max_weight() const {
    std::optional<Rational> m;
    for (const auto& [k, w] : edges_)
        if (!m || w > *m) m = w;
    return m;
}

Rational DynamicGraph::aspect_ratio() const {
    if (edges_.empty()) return 1;
    return *max_weight() / *min_weight();
}

std::vector<Vertex> DynamicGraph::component_of(Vertex v) const {
    std::vector<Vertex> out{v};
    std::set<Vertex> seen{v};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (Vertex x : neighbors(out[i])) {
            if (seen.insert(x).second) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Vertex>> DynamicGraph::components() const {
    std::vector<std::vector<Vertex>> out;
    std::vector<char> seen(adj_.size(), 0);
    for (Vertex v = 0; v < adj_.size(); ++v) {
        if (seen[v] || adj_[v].empty()) continue;
        auto comp = component_of(v);
        for (Vertex x : comp) seen[x] = 1;
        out.push_back(std::move(comp));
    }
    return out;
}

GraphDelta apply_update(DynamicGraph& g, const UpdateEvent& ev) {
    const auto& e = ev.edge;
    if (ev.kind == UpdateKind::insert) {
        g.insert_edge(e.u, e.v, e.w);
        return GraphDelta{UpdateKind::insert, e};
    }
    Rational w = g.erase_edge(e.u, e.v);
    return GraphDelta{UpdateKind::erase, WeightedEdge(e.u, e.v, w)};
}

DynamicGraph filter_edges(const DynamicGraph& g, const std::function<bool(const WeightedEdge&)>& pred) {
    DynamicGraph out(g.vertex_count());
    for (const auto& [k, w] : g.edges()) {
        WeightedEdge e(k, w);
        if (pred(e)) out.insert_edge(e);
    }
    return out;
}

DynamicGraph graph_from_edges(const std::vector<WeightedEdge>& edges, std::size_t vertex_count) {
    DynamicGraph g(vertex_count);
    for (const auto& e : edges) g.insert_edge(e);
    return g;
}

}  // namespace dynmwm

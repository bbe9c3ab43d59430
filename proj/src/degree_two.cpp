#include "dynmwm/degree_two.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynmwm {

void PathCycleStore::link(const WeightedEdge& e) {
    if (g_.degree(e.u) >= 2 || g_.degree(e.v) >= 2)
        throw UpdateError("linking " + to_string(e.key()) + " would create a vertex of degree three");
    g_.insert_edge(e);
}

Rational PathCycleStore::cut(const EdgeKey& k) { return g_.erase_edge(k.u, k.v); }

PathView PathCycleStore::view(Vertex v) const {
    PathView p;
    if (g_.degree(v) == 0) {
        p.verts.push_back(v);
        return p;
    }
    auto comp = g_.component_of(v);
    std::optional<Vertex> start;
    for (Vertex x : comp)
        if (g_.degree(x) == 1) {
            start = x;
            break;
        }
    p.cycle = !start;
    Vertex cur = start ? *start : comp.front();
    Vertex prev = cur;
    p.verts.push_back(cur);
    Vertex next = *g_.neighbors(cur).begin();
    while (true) {
        EdgeKey k = make_key(cur, next);
        p.edges.emplace_back(k, g_.weight(k));
        prev = cur;
        cur = next;
        if (cur == p.verts.front()) break;
        p.verts.push_back(cur);
        std::optional<Vertex> nx;
        for (Vertex y : g_.neighbors(cur))
            if (y != prev) nx = y;
        if (!nx) break;
        next = *nx;
    }
    return p;
}

std::pair<Vertex, Vertex> PathCycleStore::heads(Vertex v) const {
    PathView p = view(v);
    if (p.cycle) throw std::invalid_argument("heads requested on a cycle");
    return {p.verts.front(), p.verts.back()};
}

WeightedEdge PathCycleStore::find_min(const PathView& p, Vertex h, std::size_t l, std::size_t r) {
    if (p.cycle) throw std::invalid_argument("find_min requested on a cycle");
    if (!(1 <= l && l <= r && r <= p.length())) throw std::out_of_range("find_min window out of range");
    bool forward = p.verts.front() == h;
    if (!forward && p.verts.back() != h) throw std::invalid_argument("find_min needs a head of the path");
    std::optional<std::size_t> best;
    for (std::size_t pos = l; pos <= r; ++pos) {
        std::size_t idx = forward ? pos - 1 : p.length() - pos;
        if (!best || p.edges[idx].w < p.edges[*best].w) best = idx;
    }
    return p.edges[*best];
}

Matching PathCycleStore::mwm(const PathView& p) { return mwm_path_cycle(p.edges, p.cycle); }

std::size_t PathCycleStore::max_component_length() const {
    std::size_t best = 0;
    for (const auto& comp : g_.components()) best = std::max(best, view(comp.front()).length());
    return best;
}

DegreeTwoSolver::DegreeTwoSolver(Rational eps) : eps_(std::move(eps)) {
    if (!(eps_ > 0 && eps_ <= 1)) throw std::invalid_argument("degree-two solver needs 0 < eps <= 1");
    c_ = static_cast<std::size_t>(ceil_div(Rational(1) / eps_));
}

Rational DegreeTwoSolver::reservoir_weight() const {
    Rational s = 0;
    for (const auto& [k, w] : reservoir_) s += w;
    return s;
}

void DegreeTwoSolver::link(const WeightedEdge& e) {
    store_.link(e);
    touched_.insert(e.u);
    touched_.insert(e.v);
}

void DegreeTwoSolver::cut(const EdgeKey& k) {
    store_.cut(k);
    touched_.insert(k.u);
    touched_.insert(k.v);
}

void DegreeTwoSolver::maintain(Vertex v) {
    ++maintain_calls_;
    PathView p = store_.view(v);
    if (p.cycle) return;
    std::size_t len = p.length();
    if (len < 3 * c_) return;
    Vertex h = std::min(p.verts.front(), p.verts.back());
    std::size_t lo = (len - c_) / 2;
    WeightedEdge e = PathCycleStore::find_min(p, h, lo, lo + c_ - 1);
    // Endpoint on the h side of the removed edge.
    const auto& order = p.verts;
    auto iu = std::find(order.begin(), order.end(), e.u) - order.begin();
    auto iv = std::find(order.begin(), order.end(), e.v) - order.begin();
    bool u_first = (h == p.verts.front()) == (iu < iv);
    Vertex left = u_first ? e.u : e.v;
    Vertex right = u_first ? e.v : e.u;
    cut(e.key());
    reservoir_.emplace(e.key(), e.w);
    maintain(left);
    maintain(right);
}

void DegreeTwoSolver::reinstate_at(Vertex head) {
    for (auto it = reservoir_.begin(); it != reservoir_.end(); ++it) {
        if (!it->first.touches(head)) continue;
        WeightedEdge e(it->first, it->second);
        reservoir_.erase(it);
        link(e);
        maintain(head);
        return;
    }
}

MatchingDelta DegreeTwoSolver::update(const UpdateEvent& ev) {
    const WeightedEdge& e = ev.edge;
    touched_.clear();
    if (ev.kind == UpdateKind::insert) {
        if (graph_.has_edge(e.key())) throw UpdateError("duplicate insert of edge " + to_string(e.key()));
        if (graph_.degree(e.u) >= 2 || graph_.degree(e.v) >= 2)
            throw UpdateError("insert of " + to_string(e.key()) + " breaks the degree-two precondition");
        graph_.insert_edge(e);
        link(e);
        if (!store_.view(e.u).cycle) maintain(e.u);
    } else {
        if (!graph_.has_edge(e.key())) throw UpdateError("delete of missing edge " + to_string(e.key()));
        graph_.erase_edge(e.u, e.v);
        auto r = reservoir_.find(e.key());
        if (r != reservoir_.end()) {
            reservoir_.erase(r);
        } else {
            cut(e.key());
            for (Vertex x : {e.u, e.v}) {
                PathView p = store_.view(x);
                if (p.cycle) continue;
                Vertex a = p.verts.front(), b = p.verts.back();
                Vertex h = a == x ? b : a;
                reinstate_at(h);
            }
        }
    }
    return refresh();
}

MatchingDelta DegreeTwoSolver::refresh() {
    std::set<Vertex> seen;
    std::vector<PathView> views;
    for (Vertex x : touched_) {
        if (seen.count(x)) continue;
        PathView p = store_.view(x);
        for (Vertex y : p.verts) seen.insert(y);
        views.push_back(std::move(p));
    }
    Matching next = matching_;
    std::set<EdgeKey> stale;
    for (Vertex y : seen)
        if (auto k = next.edge_at(y)) stale.insert(*k);
    for (const auto& k : stale) next.remove(k);
    std::vector<WeightedEdge> fresh;
    for (const auto& p : views)
        for (const auto& e : PathCycleStore::mwm(p).edge_list()) {
            next.add(e);
            fresh.push_back(e);
        }
    MatchingDelta d;
    for (const auto& k : stale)
        if (!next.contains(k)) d.removed.emplace_back(k, matching_.weight_of(k));
    std::sort(fresh.begin(), fresh.end(), [](const auto& a, const auto& b) { return a.key() < b.key(); });
    for (const auto& e : fresh)
        if (!matching_.contains(e.key())) d.added.push_back(e);
    matching_ = std::move(next);
    return d;
}

}  // namespace dynmwm

#include "dynmwm/matching.hpp"

#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace dynmwm {

namespace {
constexpr Vertex kNone = std::numeric_limits<Vertex>::max();
}

Matching::Matching(const std::vector<WeightedEdge>& edges) {
    for (const auto& e : edges) add(e);
}

void Matching::add(const WeightedEdge& e) {
    if (is_matched(e.u) || is_matched(e.v))
        throw std::invalid_argument("edge " + to_string(e.key()) + " conflicts with matching");
    Vertex hi = std::max(e.u, e.v);
    if (hi >= partner_.size()) partner_.resize(static_cast<std::size_t>(hi) + 1, kNone);
    partner_[e.u] = e.v;
    partner_[e.v] = e.u;
    edges_.emplace(e.key(), e.w);
    total_ += e.w;
}

bool Matching::remove(const EdgeKey& k) {
    auto it = edges_.find(k);
    if (it == edges_.end()) return false;
    total_ -= it->second;
    partner_[k.u] = kNone;
    partner_[k.v] = kNone;
    edges_.erase(it);
    return true;
}

void Matching::clear() {
    edges_.clear();
    partner_.clear();
    total_ = 0;
}

std::optional<Vertex> Matching::partner(Vertex v) const {
    if (v >= partner_.size() || partner_[v] == kNone) return std::nullopt;
    return partner_[v];
}

std::optional<EdgeKey> Matching::edge_at(Vertex v) const {
    auto p = partner(v);
    if (!p) return std::nullopt;
    return make_key(v, *p);
}

std::vector<WeightedEdge> Matching::edge_list() const {
    std::vector<WeightedEdge> out;
    out.reserve(edges_.size());
    for (const auto& [k, w] : edges_) out.emplace_back(k, w);
    return out;
}

std::vector<EdgeKey> Matching::keys() const {
    std::vector<EdgeKey> out;
    out.reserve(edges_.size());
    for (const auto& [k, w] : edges_) out.push_back(k);
    return out;
}

const Rational& Matching::weight_of(const EdgeKey& k) const {
    auto it = edges_.find(k);
    if (it == edges_.end()) throw std::invalid_argument("edge " + to_string(k) + " not in matching");
    return it->second;
}

MatchingDelta diff(const Matching& before, const Matching& after) {
    MatchingDelta d;
    for (const auto& [k, w] : before.edges())
        if (!after.contains(k) || after.weight_of(k) != w) d.removed.emplace_back(k, w);
    for (const auto& [k, w] : after.edges())
        if (!before.contains(k) || before.weight_of(k) != w) d.added.emplace_back(k, w);
    return d;
}

void apply_delta(Matching& m, const MatchingDelta& d) {
    for (const auto& e : d.removed) m.remove(e.key());
    for (const auto& e : d.added) m.add(e);
}

bool is_valid_matching(const Matching& m) {
    std::map<Vertex, int> seen;
    Rational total = 0;
    for (const auto& [k, w] : m.edges()) {
        if (++seen[k.u] > 1 || ++seen[k.v] > 1) return false;
        if (m.partner(k.u) != k.v || m.partner(k.v) != k.u) return false;
        total += w;
    }
    return total == m.weight();
}

bool is_subgraph_matching(const Matching& m, const DynamicGraph& g) {
    for (const auto& [k, w] : m.edges()) {
        auto gw = g.find_weight(k);
        if (!gw || *gw != w) return false;
    }
    return true;
}

Rational weight_in(const Matching& m, const DynamicGraph& g) {
    Rational t = 0;
    for (const auto& [k, w] : m.edges()) t += g.weight(k);
    return t;
}

}  // namespace dynmwm

namespace dynmwm {

std::vector<AltComponent> symmetric_difference_components(const Matching& a, const Matching& b) {
    std::map<Vertex, std::pair<std::optional<EdgeKey>, std::optional<EdgeKey>>> inc;
    std::set<EdgeKey> pending;
    for (const auto& [k, w] : a.edges()) {
        if (b.contains(k)) continue;
        inc[k.u].first = k;
        inc[k.v].first = k;
        pending.insert(k);
    }
    for (const auto& [k, w] : b.edges()) {
        if (a.contains(k)) continue;
        inc[k.u].second = k;
        inc[k.v].second = k;
        pending.insert(k);
    }
    auto walk_from = [&](Vertex start, bool first_a, bool cycle) {
        AltComponent comp;
        comp.cycle = cycle;
        Vertex cur = start;
        bool use_a = first_a;
        while (true) {
            const auto& slot = inc[cur];
            const auto& k = use_a ? slot.first : slot.second;
            if (!k || !pending.count(*k)) break;
            pending.erase(*k);
            comp.edges.push_back(AltEdge{WeightedEdge(*k, use_a ? a.weight_of(*k) : b.weight_of(*k)), use_a});
            cur = k->other(cur);
            use_a = !use_a;
        }
        return comp;
    };
    std::vector<AltComponent> out;
    // Paths: start from degree-one vertices in ascending order.
    for (const auto& [x, slot] : inc) {
        bool has_a = slot.first.has_value(), has_b = slot.second.has_value();
        if (has_a == has_b) continue;
        const auto& k = has_a ? slot.first : slot.second;
        if (!pending.count(*k)) continue;
        out.push_back(walk_from(x, has_a, false));
    }
    while (!pending.empty()) {
        Vertex start = pending.begin()->u;
        for (const auto& k : pending) start = std::min(start, k.u);
        out.push_back(walk_from(start, true, true));
    }
    return out;
}

std::vector<WeightedEdge> side_edges(const AltComponent& c, bool from_a) {
    std::vector<WeightedEdge> out;
    for (const auto& e : c.edges)
        if (e.from_a == from_a) out.push_back(e.edge);
    return out;
}

}  // namespace dynmwm

#pragma once

#include "dynmwm/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dynmwm {

using Vertex = std::uint32_t;

struct EdgeKey {
    Vertex u = 0;
    Vertex v = 0;
    auto operator<=>(const EdgeKey&) const = default;
    Vertex other(Vertex x) const { return x == u ? v : u; }
    bool touches(Vertex x) const { return x == u || x == v; }
};

// Canonical identity: smaller endpoint first. Self-loops are rejected.
EdgeKey make_key(Vertex a, Vertex b);

std::string to_string(const EdgeKey& k);

struct EdgeKeyHash {
    std::size_t operator()(const EdgeKey& k) const noexcept {
        return (static_cast<std::size_t>(k.u) << 32) ^ k.v;
    }
};

struct WeightedEdge {
    Vertex u = 0;
    Vertex v = 0;
    Rational w;

    WeightedEdge() = default;
    WeightedEdge(Vertex a, Vertex b, Rational weight);
    WeightedEdge(const EdgeKey& k, Rational weight) : WeightedEdge(k.u, k.v, std::move(weight)) {}
    EdgeKey key() const { return EdgeKey{u, v}; }
    bool operator==(const WeightedEdge&) const = default;
};

class UpdateError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class UpdateKind { insert, erase };

struct UpdateEvent {
    UpdateKind kind = UpdateKind::insert;
    WeightedEdge edge;
    std::uint64_t seq = 0;
    bool operator==(const UpdateEvent&) const = default;
};

UpdateEvent make_insert(Vertex u, Vertex v, Rational w, std::uint64_t seq = 0);
UpdateEvent make_erase(Vertex u, Vertex v, Rational w, std::uint64_t seq = 0);

class DynamicGraph {
  public:
    explicit DynamicGraph(std::size_t vertex_count = 0);

    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    void ensure_vertex(Vertex v);

    bool has_edge(const EdgeKey& k) const { return edges_.count(k) != 0; }
    bool has_edge(Vertex a, Vertex b) const { return a != b && has_edge(make_key(a, b)); }
    const Rational& weight(const EdgeKey& k) const;
    std::optional<Rational> find_weight(const EdgeKey& k) const;

    void insert_edge(Vertex a, Vertex b, const Rational& w);
    void insert_edge(const WeightedEdge& e) { insert_edge(e.u, e.v, e.w); }
    Rational erase_edge(Vertex a, Vertex b);

    const std::map<EdgeKey, Rational>& edges() const { return edges_; }
    std::vector<WeightedEdge> edge_list() const;
    const std::set<Vertex>& neighbors(Vertex v) const;
    std::size_t degree(Vertex v) const { return v < adj_.size() ? adj_[v].size() : 0; }
    std::size_t max_degree() const;

    Rational total_weight() const;
    std::optional<Rational> min_weight() const;
    std::optional<Rational> max_weight() const;
    // max_e w(e) / min_f w(f); 1 for an empty graph.
    Rational aspect_ratio() const;

    // Vertices reachable from v, ascending.
    std::vector<Vertex> component_of(Vertex v) const;
    // Connected components among non-isolated vertices, each ascending.
    std::vector<std::vector<Vertex>> components() const;

    bool operator==(const DynamicGraph& o) const { return edges_ == o.edges_; }

  private:
    std::map<EdgeKey, Rational> edges_;
    std::vector<std::set<Vertex>> adj_;
};

struct GraphDelta {
    UpdateKind kind = UpdateKind::insert;
    WeightedEdge edge;
};

// Mutates g. Duplicate insertions and deletions of absent edges throw UpdateError.
GraphDelta apply_update(DynamicGraph& g, const UpdateEvent& ev);

// Subgraph with edges whose weight satisfies pred.
DynamicGraph filter_edges(const DynamicGraph& g, const std::function<bool(const WeightedEdge&)>& pred);

DynamicGraph graph_from_edges(const std::vector<WeightedEdge>& edges, std::size_t vertex_count = 0);

}  // namespace dynmwm

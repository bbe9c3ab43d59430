#pragma once

#include "dynmwm/graph.hpp"

#include <map>
#include <optional>
#include <vector>

namespace dynmwm {

class Matching {
  public:
    Matching() = default;
    explicit Matching(const std::vector<WeightedEdge>& edges);

    // Throws std::invalid_argument if an endpoint is already matched.
    void add(const WeightedEdge& e);
    void add(const EdgeKey& k, const Rational& w) { add(WeightedEdge(k, w)); }
    // Returns false when the edge is absent.
    bool remove(const EdgeKey& k);
    void clear();

    bool contains(const EdgeKey& k) const { return edges_.count(k) != 0; }
    std::optional<Vertex> partner(Vertex v) const;
    bool is_matched(Vertex v) const { return partner(v).has_value(); }
    // The matched edge at v, if any.
    std::optional<EdgeKey> edge_at(Vertex v) const;
    bool can_add(const EdgeKey& k) const { return !is_matched(k.u) && !is_matched(k.v); }

    const Rational& weight() const { return total_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    const std::map<EdgeKey, Rational>& edges() const { return edges_; }
    std::vector<WeightedEdge> edge_list() const;
    std::vector<EdgeKey> keys() const;
    const Rational& weight_of(const EdgeKey& k) const;

    bool operator==(const Matching& o) const { return edges_ == o.edges_; }

  private:
    std::map<EdgeKey, Rational> edges_;
    std::vector<Vertex> partner_;
    Rational total_ = 0;
};

struct MatchingDelta {
    std::vector<WeightedEdge> removed;
    std::vector<WeightedEdge> added;
    std::size_t recourse() const { return removed.size() + added.size(); }
    bool empty() const { return removed.empty() && added.empty(); }
};

// Edges leaving `before` and entering `after`, each in key order.
MatchingDelta diff(const Matching& before, const Matching& after);

// Applies removals then additions.
void apply_delta(Matching& m, const MatchingDelta& d);

// Checks vertex-disjointness and that total weight equals the recomputed sum.
bool is_valid_matching(const Matching& m);

// True if every edge of m is present in g with the same weight.
bool is_subgraph_matching(const Matching& m, const DynamicGraph& g);

// Weight of the matching evaluated with the graph's current weights.
Rational weight_in(const Matching& m, const DynamicGraph& g);

// One edge of a component of A xor B, tagged with the side it came from.
struct AltEdge {
    WeightedEdge edge;
    bool from_a = true;
};

// A path or cycle of A xor B with edges in walk order. Paths start at the
// endpoint with the smaller id; cycles start at their smallest vertex and
// leave it along its A edge.
struct AltComponent {
    std::vector<AltEdge> edges;
    bool cycle = false;
};

std::vector<AltComponent> symmetric_difference_components(const Matching& a, const Matching& b);

// Edge sets of a component restricted to one side.
std::vector<WeightedEdge> side_edges(const AltComponent& c, bool from_a);

}  // namespace dynmwm

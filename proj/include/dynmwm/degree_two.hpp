#pragma once

#include "dynmwm/oracle.hpp"
#include "dynmwm/solver.hpp"

#include <map>
#include <set>

namespace dynmwm {

// A path or cycle of the store, listed from a head (paths) or from the smallest vertex (cycles).
// verts has edges.size()+1 entries for a path and edges.size() for a cycle.
struct PathView {
    std::vector<Vertex> verts;
    std::vector<WeightedEdge> edges;
    bool cycle = false;
    std::size_t length() const { return edges.size(); }
};

// Paths and cycles over degree-at-most-two edges. Operations are linear scans.
class PathCycleStore {
  public:
    void link(const WeightedEdge& e);
    Rational cut(const EdgeKey& k);
    bool contains(const EdgeKey& k) const { return g_.has_edge(k); }
    std::size_t degree(Vertex v) const { return g_.degree(v); }

    // Component of v. Paths start at the head with the smaller id.
    PathView view(Vertex v) const;
    // Both ends of the path holding v; (v, v) for an isolated vertex. Throws on cycles.
    std::pair<Vertex, Vertex> heads(Vertex v) const;
    // Minimum weight edge among positions l..r (1-indexed) counted from head h.
    // Ties go to the edge nearest h.
    static WeightedEdge find_min(const PathView& p, Vertex h, std::size_t l, std::size_t r);
    static Matching mwm(const PathView& p);

    const DynamicGraph& graph() const { return g_; }
    std::size_t max_component_length() const;

  private:
    DynamicGraph g_;
};

// Fully dynamic approximate MWM on graphs of maximum degree two.
class DegreeTwoSolver : public GraphBackedSolver {
  public:
    explicit DegreeTwoSolver(Rational eps);
    std::string name() const override { return "degree-two"; }
    MatchingDelta update(const UpdateEvent& ev) override;

    const Rational& eps() const { return eps_; }
    std::size_t window() const { return c_; }
    std::size_t length_cap() const { return 3 * c_; }
    const PathCycleStore& store() const { return store_; }
    const std::map<EdgeKey, Rational>& reservoir() const { return reservoir_; }
    Rational reservoir_weight() const;
    std::uint64_t maintain_calls() const { return maintain_calls_; }

  private:
    void maintain(Vertex v);
    void reinstate_at(Vertex head);
    void link(const WeightedEdge& e);
    void cut(const EdgeKey& k);
    MatchingDelta refresh();

    Rational eps_;
    std::size_t c_;
    PathCycleStore store_;
    std::map<EdgeKey, Rational> reservoir_;
    std::set<Vertex> touched_;
    std::uint64_t maintain_calls_ = 0;
};

}  // namespace dynmwm

#pragma once

#include "dynmwm/matching.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace dynmwm {

// A fully dynamic matching algorithm observing one graph.
class DynamicSolver {
  public:
    virtual ~DynamicSolver() = default;

    virtual std::string name() const = 0;
    // Applies the event to the solver's graph and returns the output change.
    virtual MatchingDelta update(const UpdateEvent& ev) = 0;
    virtual const Matching& matching() const = 0;
    virtual const DynamicGraph& graph() const = 0;

    // Vertex-match query.
    std::optional<Vertex> vertex_match(Vertex v) const { return matching().partner(v); }

    // Inserts every edge of g in key order and returns the net output change.
    MatchingDelta insert_all(const DynamicGraph& g);
};

using SolverFactory = std::function<std::unique_ptr<DynamicSolver>()>;

// Common base for solvers that recompute their output matching and diff it.
class GraphBackedSolver : public DynamicSolver {
  public:
    const Matching& matching() const override { return matching_; }
    const DynamicGraph& graph() const override { return graph_; }

  protected:
    MatchingDelta replace_matching(Matching next);

    DynamicGraph graph_;
    Matching matching_;
};

}  // namespace dynmwm

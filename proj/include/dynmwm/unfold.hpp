#pragma once

#include "dynmwm/solver.hpp"

#include <memory>

namespace dynmwm {

// Unweighted graph with W copies of each base vertex. Copy i (1-based) of base
// vertex u has id u*W + (i-1). An edge uv of weight w (u < v) becomes the w edges
// u^i v^(w-i+1).
struct UnfoldedGraph {
    long W = 1;
    std::size_t base_vertices = 0;
    DynamicGraph graph;

    Vertex copy(Vertex u, long i) const;
    // (base vertex, copy index)
    std::pair<Vertex, long> origin(Vertex x) const;
};

// Throws std::invalid_argument unless every weight is an integer in [1, W].
UnfoldedGraph unfold(const DynamicGraph& g, long W);
// Unfolded copies of one base edge.
std::vector<EdgeKey> unfolded_copies(const WeightedEdge& e, long W);
// Base edges (with their base weights) having at least one legal copy among `h`.
std::vector<WeightedEdge> refold(const std::vector<EdgeKey>& h, const DynamicGraph& base, long W);

// Weighted matching through an unweighted solver on the unfolded graph. The output
// only loses deleted edges between rebuilds; a rebuild takes an approximate MWM of
// the refolded inner matching once the update count c reaches eps * W_star / W.
class BdlSolver : public GraphBackedSolver {
  public:
    // inner defaults to an exact rebuild-from-scratch solver (unit weights make it an MCM).
    BdlSolver(Rational eps, long W, std::unique_ptr<DynamicSolver> inner = nullptr);
    std::string name() const override { return "bdl"; }
    MatchingDelta update(const UpdateEvent& ev) override;

    const DynamicSolver& inner() const { return *inner_; }
    long max_weight() const { return W_; }
    std::uint64_t counter() const { return c_; }
    const Rational& threshold_weight() const { return w_star_; }
    std::uint64_t rebuilds() const { return rebuilds_; }
    // Whether c < eps W*/W held after every update.
    bool cadence_ok() const { return cadence_ok_; }
    // Guarantee factor: 1 - 5 eps on bipartite graphs, 2/3 - 5 eps otherwise.
    Rational contract_ratio(bool bipartite) const;

  private:
    void rebuild();

    Rational eps_;
    long W_;
    std::unique_ptr<DynamicSolver> inner_;
    std::uint64_t c_ = 0;
    Rational w_star_ = 0;
    std::uint64_t rebuilds_ = 0;
    bool cadence_ok_ = true;
};

}  // namespace dynmwm

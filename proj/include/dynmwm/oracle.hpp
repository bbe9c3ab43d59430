#pragma once

#include "dynmwm/matching.hpp"
#include "dynmwm/solver.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace dynmwm {

struct OracleBudget {
    // Largest connected component handed to the exponential general solver.
    std::size_t max_vertices_general = 20;
    // Largest side handed to the bipartite assignment solver.
    std::size_t max_vertices_bipartite = 1024;

    // Reads DYNMWM_ORACLE_BUDGET="general,bipartite" (either part may be empty).
    static OracleBudget from_env();
};

class BudgetExceeded : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Exact MWM by subset dynamic programming per connected component. Among all
// maximum weight matchings, returns the lexicographically smallest sorted edge list.
Matching mwm_exact_general(const DynamicGraph& g, const OracleBudget& budget = OracleBudget::from_env());

// Two-colouring of the graph (0/1 per vertex), or nullopt when an odd cycle exists.
std::optional<std::vector<int>> bipartition(const DynamicGraph& g);

// Exact MWM via the Hungarian method. `side` must be a proper two-colouring.
// With reverse_order the left side is scanned from the highest id, which yields a
// possibly different optimum; used to build high-churn reference solvers.
Matching mwm_exact_bipartite(const DynamicGraph& g, const std::vector<int>& side,
                             const OracleBudget& budget = OracleBudget::from_env(), bool reverse_order = false);

// Exact MWM on a simple path (edges listed along the walk) or a simple cycle.
// Ties go to the lexicographically smallest edge set.
Matching mwm_path_cycle(const std::vector<WeightedEdge>& walk, bool cycle);

// Exact MWM on a graph of maximum degree two, component by component.
Matching mwm_degree_two(const DynamicGraph& g);

// Exact MWM through the blossom algorithm (weights scaled to integers).
Matching mwm_blossom(const DynamicGraph& g);

// mu_w(G) with the cheapest exact method available.
Rational mwm_value(const DynamicGraph& g, const OracleBudget& budget = OracleBudget::from_env());
Matching mwm_best_exact(const DynamicGraph& g, const OracleBudget& budget = OracleBudget::from_env());

// Size of a maximum cardinality matching.
std::size_t mcm_size(const DynamicGraph& g);
// Maximum cardinality matching on a bipartite graph, unit weights on the output.
Matching mcm_bipartite(const DynamicGraph& g, const std::vector<int>& side);

// Static (1-eps)-approximate MWM. Always returns an exact matching.
Matching approx_mwm_static(const DynamicGraph& g, const Rational& eps);

// Every maximal matching M with w(M) >= (1-eps) mu_w(G), in lexicographic order.
std::vector<Matching> enumerate_approx_mwms(const DynamicGraph& g, const Rational& eps,
                                            const OracleBudget& budget = OracleBudget::from_env());

// Walks of a max-degree-two graph: each component as (edges in walk order, is_cycle).
struct Walk {
    std::vector<WeightedEdge> edges;
    bool cycle = false;
};
std::vector<Walk> degree_two_walks(const DynamicGraph& g);

enum class OracleKind { general, bipartite, blossom, best };

// Rebuild-from-scratch solver: recomputes an exact MWM after every update.
// With churn set, alternating updates use a reversed tie-break so the output
// jumps between optimal matchings.
class OracleSolver : public GraphBackedSolver {
  public:
    explicit OracleSolver(OracleKind kind = OracleKind::best, bool churn = false,
                          OracleBudget budget = OracleBudget::from_env());
    std::string name() const override { return churn_ ? "oracle-churn" : "oracle"; }
    MatchingDelta update(const UpdateEvent& ev) override;

  private:
    Matching solve(bool flip) const;

    OracleKind kind_;
    bool churn_;
    OracleBudget budget_;
    std::uint64_t updates_ = 0;
};

}  // namespace dynmwm

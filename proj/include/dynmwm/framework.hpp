#pragma once

#include "dynmwm/census.hpp"
#include "dynmwm/degree_two.hpp"
#include "dynmwm/solver.hpp"

#include <map>
#include <memory>
#include <optional>

namespace dynmwm {

// What an inner solver is told about the class it serves.
struct InnerSpec {
    Rational eps;
    Rational aspect_ratio;  // weights handed to the solver lie in [1, aspect_ratio]
    std::size_t max_degree = 0;  // 0 when unbounded
};

using InnerFactory = std::function<std::unique_ptr<DynamicSolver>(const InnerSpec&)>;

// Exact rebuild-from-scratch inner solver (OracleSolver with kind best).
InnerFactory oracle_inner(bool churn = false);

// Composes successive matching deltas into one net delta.
class DeltaAccumulator {
  public:
    void add(const MatchingDelta& d);
    MatchingDelta take();

  private:
    std::map<EdgeKey, Rational> removed_;
    std::map<EdgeKey, Rational> added_;
};

// Weights with f_lo * unit * base^x <= w < f_hi * unit * base^y. Exponents may be fractional.
struct WeightRange {
    Rational base = 2;
    Rational unit = 1;
    Rational x = 0;
    Rational y = 1;
    Rational lo_factor = 1;
    Rational hi_factor = 1;

    bool contains(const Rational& w) const;
    // unit * base^floor(x) * lo_factor: the divisor applied before handing weights to an inner solver.
    Rational scale() const;
    // Bounds when both exponents are integers.
    std::optional<WeightInterval> interval() const;
    std::string describe() const;
};

// Refcounted union of several matchings fed to an aggregating solver.
class UnionMerger {
  public:
    explicit UnionMerger(std::unique_ptr<DynamicSolver> solver) : solver_(std::move(solver)) {}
    // Applies the net change of all child deltas from one update; removals go first.
    MatchingDelta apply(const std::vector<MatchingDelta>& child_deltas);
    const Matching& matching() const { return solver_->matching(); }
    const DynamicSolver& solver() const { return *solver_; }
    std::uint64_t events() const { return events_; }

  private:
    std::unique_ptr<DynamicSolver> solver_;
    std::map<EdgeKey, std::pair<Rational, int>> count_;
    std::uint64_t events_ = 0;
};

enum class FrameworkMode { standard, tree, ultimate };

struct FrameworkConfig {
    Rational eps = Rational(1, 10);
    Rational weight_unit = 1;       // smallest admissible weight
    Rational max_weight = 1000000;  // largest admissible weight
    FrameworkMode mode = FrameworkMode::standard;
    int depth = 0;                  // tree mode only
    InnerFactory inner;
    std::size_t max_degree = 0;     // forwarded to inner solvers
};

// Error-constant bookkeeping. All are multipliers of eps in a guarantee 1 - C eps.
// Substitution chain 7g, census 4(1+4eps) per side, merger 2.
Rational standard_constant(const Rational& eps);
// (c+1)^d times the standard constant, with the split composition constant c = 14.
Rational tree_constant(const Rational& eps, int d);
constexpr long kTreeSplitConstant = 14;
// 7g for 2-wide classes plus census and the low-degree merger constant.
Rational ultimate_constant(const Rational& eps);

class FrameworkSolver : public DynamicSolver {
  public:
    explicit FrameworkSolver(FrameworkConfig cfg);
    ~FrameworkSolver() override;

    std::string name() const override;
    MatchingDelta update(const UpdateEvent& ev) override;
    const Matching& matching() const override;
    const DynamicGraph& graph() const override { return graph_; }

    const FrameworkConfig& config() const { return cfg_; }
    long top_group() const { return L_; }
    std::size_t class_count() const;
    // Number of leaves (inner solver instances).
    std::size_t leaf_count() const;
    std::vector<WeightRange> leaf_ranges() const;
    // Leaves that should hold an edge of weight w according to the index arithmetic.
    std::vector<std::size_t> expected_leaves(const Rational& w) const;
    // Leaves whose class graph currently holds k.
    std::vector<std::size_t> leaves_holding(const EdgeKey& k) const;
    // Matchings at the census inputs (per standard or 2-wide class).
    std::vector<Matching> class_matchings() const;

    struct Stats {
        std::uint64_t inner_inserts = 0;
        std::uint64_t inner_erases = 0;
        std::uint64_t inner_recourse = 0;
        std::uint64_t census_recourse = 0;
        std::uint64_t merger_events = 0;
        std::uint64_t census_violations = 0;
    };
    const Stats& stats() const { return stats_; }

  private:
    struct Node;
    struct Leaf;

    void build();
    std::unique_ptr<Node> make_node(const WeightRange& r, int depth_left);
    MatchingDelta route(Node& n, const UpdateEvent& ev);
    void collect_leaves(const Node& n, std::vector<const Leaf*>& out) const;

    FrameworkConfig cfg_;
    Rational base_;
    long L_ = 0;
    DynamicGraph graph_;
    std::vector<std::unique_ptr<Node>> roots_;
    // Census index: root i -> (census id, class index inside that census).
    std::vector<std::pair<std::size_t, std::size_t>> census_slot_;
    std::vector<std::unique_ptr<Census>> census_;
    std::unique_ptr<UnionMerger> merger_;
    Stats stats_;
};

}  // namespace dynmwm

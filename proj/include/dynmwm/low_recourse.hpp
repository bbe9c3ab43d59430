#pragma once

#include "dynmwm/solver.hpp"

#include <limits>
#include <memory>
#include <optional>
#include <set>

namespace dynmwm {

struct TransformStats {
    std::size_t components = 0;
    std::size_t dropped = 0;        // edges of M_j removed from alternating components
    std::size_t switched = 0;       // components that took the M_j side
};

// Moves from tilde_i (a matching of an earlier graph) toward m_j. `updated` holds
// every edge key inserted or deleted since tilde_i was valid. Alternating components
// are cut at light M_j edges spaced ceil(2/eps) apart; a piece switches to its M_j
// edges iff it holds an updated edge. The result lives in the graph of m_j as long
// as every stale edge of tilde_i is listed in `updated`.
Matching lr_direct_transform(const Matching& tilde_i, const Matching& m_j, const std::set<EdgeKey>& updated,
                             const Rational& eps, TransformStats* stats = nullptr);

// Checkpoint forest of one phase. Each new checkpoint is attached below the deepest
// node on the current chain whose weight bucket does not exceed its own.
class TransformationForest {
  public:
    struct Node {
        std::size_t checkpoint = 0;  // position inside the phase
        std::optional<std::size_t> father;
        std::vector<std::size_t> children;
        long depth = 0;
        long bucket = 0;
        bool complete = false;
    };

    static constexpr long kNoBucket = std::numeric_limits<long>::min();

    TransformationForest(Rational eps, Rational max_weight);
    // theta = ceil(log2(W / (1-eps)^2)).
    long theta() const { return theta_; }
    // floor(log2 w), kNoBucket for w = 0.
    static long bucket_of(const Rational& w);

    // Adds the next checkpoint with the weight of the matching it carries and returns its index.
    std::size_t push(const Rational& weight);
    const std::vector<Node>& nodes() const { return nodes_; }
    std::vector<std::size_t> roots() const;
    long max_depth() const;
    // Fathers have smaller buckets (or equal) and depths never exceed theta.
    bool check_invariants() const;

  private:
    Rational eps_;
    long theta_ = 1;
    std::vector<Node> nodes_;
    std::optional<std::size_t> cur_;
    std::optional<std::size_t> root_;
};

// Documented constants of the wrapper's guarantees, with lg = ceil(log2 W):
// amortized recourse at most c lg^2 / eps and ratio at least 1 - K eps lg.
constexpr long kLowRecourseC = 1;
inline Rational low_recourse_ratio_constant() { return Rational(1, 2); }
Rational low_recourse_recourse_cap(const Rational& eps, const Rational& max_weight);
Rational low_recourse_ratio_floor(const Rational& eps, const Rational& max_weight);

// Wraps a dynamic solver and only moves its output at checkpoints, smoothing churn
// in the inner matching. Weights must lie in [1, max_weight].
class LowRecourseSolver : public DynamicSolver {
  public:
    LowRecourseSolver(std::unique_ptr<DynamicSolver> inner, Rational eps, Rational max_weight);

    std::string name() const override { return "low-recourse(" + inner_->name() + ")"; }
    MatchingDelta update(const UpdateEvent& ev) override;
    const Matching& matching() const override { return out_; }
    const DynamicGraph& graph() const override { return inner_->graph(); }

    const DynamicSolver& inner() const { return *inner_; }
    const TransformationForest& forest() const { return forest_; }

    struct Stats {
        std::uint64_t updates = 0;
        std::uint64_t checkpoints = 0;
        std::uint64_t phases = 0;
        std::uint64_t inner_recourse = 0;
        std::uint64_t max_checkpoints_per_phase = 0;
        // Largest number of transformations whose interval covers a single update.
        std::uint64_t max_cover = 0;
        long max_depth = 0;
        std::uint64_t forest_violations = 0;
    };
    const Stats& stats() const { return stats_; }

  private:
    void start_phase();
    void checkpoint();

    std::unique_ptr<DynamicSolver> inner_;
    Rational eps_;
    Rational max_weight_;
    TransformationForest forest_;
    Matching out_;

    std::uint64_t t_ = 0;
    std::uint64_t phase_start_ = 0;
    std::uint64_t phase_end_ = 0;
    std::uint64_t next_checkpoint_ = 0;
    std::uint64_t phase_checkpoints_ = 0;
    // Per checkpoint of the phase: time and the output matching installed there.
    std::vector<std::uint64_t> cp_time_;
    std::vector<Matching> cp_matching_;
    // Edge keys touched in this phase, by time.
    std::vector<std::pair<std::uint64_t, EdgeKey>> log_;
    std::vector<std::uint64_t> cover_;
    Stats stats_;
};

}  // namespace dynmwm

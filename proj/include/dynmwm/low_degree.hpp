#pragma once

#include "dynmwm/framework.hpp"
#include "dynmwm/solver.hpp"

#include <memory>

namespace dynmwm {

// Base solver for bounded-degree graphs with weights in [1, W_class]. After each
// update it recomputes an exact MWM on the radius ceil(2 W_class / eps) ball around
// the touched endpoints. Matched edges leaving the ball stay and block their inner
// endpoint. When the ball holds the whole component the result is exact there.
class LdBaseSolver : public GraphBackedSolver {
  public:
    LdBaseSolver(Rational eps, std::size_t max_degree, Rational class_weight);
    std::string name() const override { return "low-degree-base"; }
    MatchingDelta update(const UpdateEvent& ev) override;

    std::size_t radius() const { return radius_; }
    std::size_t max_degree() const { return max_degree_; }
    // Updates whose ball stopped short of the whole component.
    std::uint64_t truncated_rebuilds() const { return truncated_; }

  private:
    Rational eps_;
    std::size_t max_degree_;
    Rational class_weight_;
    std::size_t radius_;
    std::uint64_t truncated_ = 0;
};

// Fully dynamic MWM on graphs of maximum degree max_degree: the tree framework with
// depth 3 running low-recourse wrapped base solvers.
class LowDegreeSolver : public DynamicSolver {
  public:
    LowDegreeSolver(Rational eps, std::size_t max_degree, Rational weight_unit, Rational max_weight);
    std::string name() const override { return "low-degree"; }
    MatchingDelta update(const UpdateEvent& ev) override;
    const Matching& matching() const override { return fw_->matching(); }
    const DynamicGraph& graph() const override { return fw_->graph(); }

    const FrameworkSolver& framework() const { return *fw_; }
    std::size_t max_degree() const { return max_degree_; }

  private:
    std::size_t max_degree_;
    std::unique_ptr<FrameworkSolver> fw_;
};

// Documented K in the guarantee 1 - K eps log2(1/eps).
constexpr long kLowDegreeConstant = 64;

InnerFactory low_degree_base_inner(std::size_t max_degree);
std::unique_ptr<DynamicSolver> make_low_degree_solver(const Rational& eps, std::size_t max_degree,
                                                      const Rational& weight_unit, const Rational& max_weight);

}  // namespace dynmwm

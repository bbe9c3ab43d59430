#include "dynmwm/solver.hpp"

namespace dynmwm {

MatchingDelta DynamicSolver::insert_all(const DynamicGraph& g) {
    Matching before = matching();
    for (const auto& [k, w] : g.edges()) update(UpdateEvent{UpdateKind::insert, WeightedEdge(k, w), 0});
    return diff(before, matching());
}

MatchingDelta GraphBackedSolver::replace_matching(Matching next) {
    MatchingDelta d = diff(matching_, next);
    matching_ = std::move(next);
    return d;
}

}  // namespace dynmwm

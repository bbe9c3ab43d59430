#include "dynmwm/low_degree.hpp"

#include "dynmwm/low_recourse.hpp"
#include "dynmwm/oracle.hpp"

#include <deque>
#include <stdexcept>

namespace dynmwm {

LdBaseSolver::LdBaseSolver(Rational eps, std::size_t max_degree, Rational class_weight)
    : eps_(std::move(eps)), max_degree_(max_degree), class_weight_(std::move(class_weight)) {
    if (!(eps_ > 0 && eps_ < 1)) throw std::invalid_argument("low-degree base needs 0 < eps < 1");
    if (max_degree_ == 0) throw std::invalid_argument("low-degree base needs a positive degree cap");
    if (class_weight_ < 1) throw std::invalid_argument("class weight bound must be at least 1");
    radius_ = static_cast<std::size_t>(ceil_div(2 * class_weight_ / eps_));
}

MatchingDelta LdBaseSolver::update(const UpdateEvent& ev) {
    const WeightedEdge& e = ev.edge;
    if (ev.kind == UpdateKind::insert) {
        if (e.w < 1 || e.w > class_weight_)
            throw UpdateError("weight " + format_rational(e.w) + " outside [1, W_class]");
        if (!graph_.has_edge(e.key()) && (graph_.degree(e.u) >= max_degree_ || graph_.degree(e.v) >= max_degree_))
            throw UpdateError("insert of " + to_string(e.key()) + " exceeds the degree cap");
    }
    apply_update(graph_, ev);

    std::map<Vertex, std::size_t> dist;
    std::deque<Vertex> q;
    for (Vertex x : {e.u, e.v}) {
        graph_.ensure_vertex(x);
        if (dist.emplace(x, 0).second) q.push_back(x);
    }
    bool truncated = false;
    while (!q.empty()) {
        Vertex x = q.front();
        q.pop_front();
        for (Vertex y : graph_.neighbors(x)) {
            if (dist.count(y)) continue;
            if (dist[x] == radius_) {
                truncated = true;
                continue;
            }
            dist[y] = dist[x] + 1;
            q.push_back(y);
        }
    }
    if (truncated) ++truncated_;

    Matching next = matching_;
    if (ev.kind == UpdateKind::erase) next.remove(e.key());
    std::set<Vertex> blocked;
    for (const auto& k : matching_.keys()) {
        if (!next.contains(k)) continue;
        bool in_u = dist.count(k.u) != 0, in_v = dist.count(k.v) != 0;
        if (in_u && in_v) next.remove(k);
        else if (in_u) blocked.insert(k.u);
        else if (in_v) blocked.insert(k.v);
    }
    DynamicGraph sub = filter_edges(graph_, [&](const WeightedEdge& f) {
        return dist.count(f.u) && dist.count(f.v) && !blocked.count(f.u) && !blocked.count(f.v);
    });
    for (const auto& f : mwm_best_exact(sub).edge_list()) next.add(f);
    return replace_matching(std::move(next));
}

LowDegreeSolver::LowDegreeSolver(Rational eps, std::size_t max_degree, Rational weight_unit, Rational max_weight)
    : max_degree_(max_degree) {
    if (max_degree_ == 0) throw std::invalid_argument("low-degree solver needs a positive degree cap");
    FrameworkConfig cfg;
    cfg.eps = std::move(eps);
    cfg.weight_unit = std::move(weight_unit);
    cfg.max_weight = std::move(max_weight);
    cfg.mode = FrameworkMode::tree;
    cfg.depth = 3;
    cfg.max_degree = max_degree_;
    cfg.inner = low_degree_base_inner(max_degree_);
    fw_ = std::make_unique<FrameworkSolver>(std::move(cfg));
}

MatchingDelta LowDegreeSolver::update(const UpdateEvent& ev) {
    const DynamicGraph& g = fw_->graph();
    const WeightedEdge& e = ev.edge;
    if (ev.kind == UpdateKind::insert && !g.has_edge(e.key()) &&
        (g.degree(e.u) >= max_degree_ || g.degree(e.v) >= max_degree_))
        throw UpdateError("insert of " + to_string(e.key()) + " exceeds the degree cap");
    return fw_->update(ev);
}

InnerFactory low_degree_base_inner(std::size_t max_degree) {
    return [max_degree](const InnerSpec& spec) -> std::unique_ptr<DynamicSolver> {
        return std::make_unique<LowRecourseSolver>(
            std::make_unique<LdBaseSolver>(spec.eps, max_degree, spec.aspect_ratio), spec.eps, spec.aspect_ratio);
    };
}

std::unique_ptr<DynamicSolver> make_low_degree_solver(const Rational& eps, std::size_t max_degree,
                                                      const Rational& weight_unit, const Rational& max_weight) {
    return std::make_unique<LowDegreeSolver>(eps, max_degree, weight_unit, max_weight);
}

}  // namespace dynmwm

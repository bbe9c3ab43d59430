#include "dynmwm/unfold.hpp"

#include "dynmwm/oracle.hpp"

#include <stdexcept>

namespace dynmwm {

namespace {

long integer_weight(const Rational& w, long W) {
    if (denominator(w) != 1 || w < 1 || w > W)
        throw std::invalid_argument("unfolding needs integer weights in [1, " + std::to_string(W) + "], got " +
                                    format_rational(w));
    return numerator(w).convert_to<long>();
}

}  // namespace

Vertex UnfoldedGraph::copy(Vertex u, long i) const {
    if (i < 1 || i > W) throw std::out_of_range("copy index out of range");
    return static_cast<Vertex>(u * W + (i - 1));
}

std::pair<Vertex, long> UnfoldedGraph::origin(Vertex x) const {
    return {static_cast<Vertex>(x / W), static_cast<long>(x % W) + 1};
}

std::vector<EdgeKey> unfolded_copies(const WeightedEdge& e, long W) {
    long w = integer_weight(e.w, W);
    EdgeKey k = e.key();
    std::vector<EdgeKey> out;
    for (long i = 1; i <= w; ++i)
        out.push_back(make_key(static_cast<Vertex>(k.u * W + (i - 1)), static_cast<Vertex>(k.v * W + (w - i))));
    return out;
}

UnfoldedGraph unfold(const DynamicGraph& g, long W) {
    if (W < 1) throw std::invalid_argument("W must be positive");
    UnfoldedGraph out;
    out.W = W;
    out.base_vertices = g.vertex_count();
    out.graph = DynamicGraph(g.vertex_count() * static_cast<std::size_t>(W));
    for (const auto& e : g.edge_list())
        for (const auto& k : unfolded_copies(e, W)) out.graph.insert_edge(k.u, k.v, 1);
    return out;
}

std::vector<WeightedEdge> refold(const std::vector<EdgeKey>& h, const DynamicGraph& base, long W) {
    std::set<EdgeKey> keys;
    for (const auto& k : h) {
        Vertex a = static_cast<Vertex>(k.u / W), b = static_cast<Vertex>(k.v / W);
        long i = static_cast<long>(k.u % W) + 1, j = static_cast<long>(k.v % W) + 1;
        if (a == b) continue;
        EdgeKey bk = make_key(a, b);
        auto w = base.find_weight(bk);
        if (!w) continue;
        if (a != bk.u) std::swap(i, j);
        if (Rational(i + j) == *w + 1) keys.insert(bk);
    }
    std::vector<WeightedEdge> out;
    for (const auto& k : keys) out.emplace_back(k, base.weight(k));
    return out;
}

BdlSolver::BdlSolver(Rational eps, long W, std::unique_ptr<DynamicSolver> inner)
    : eps_(std::move(eps)), W_(W), inner_(std::move(inner)) {
    if (!(eps_ > 0 && eps_ < 1)) throw std::invalid_argument("bdl needs 0 < eps < 1");
    if (W_ < 1) throw std::invalid_argument("bdl needs W >= 1");
    if (!inner_) inner_ = std::make_unique<OracleSolver>(OracleKind::best);
    rebuild();
}

Rational BdlSolver::contract_ratio(bool bipartite) const {
    return (bipartite ? Rational(1) : Rational(2, 3)) - 5 * eps_;
}

void BdlSolver::rebuild() {
    ++rebuilds_;
    DynamicGraph folded = graph_from_edges(refold(inner_->matching().keys(), graph_, W_));
    // An exact matching meets the (1-eps) requirement for any eps.
    replace_matching(mwm_best_exact(folded));
    c_ = 0;
    w_star_ = matching_.weight();
}

MatchingDelta BdlSolver::update(const UpdateEvent& ev) {
    integer_weight(ev.edge.w, W_);
    Matching before = matching_;
    apply_update(graph_, ev);
    for (const auto& k : unfolded_copies(ev.edge, W_))
        inner_->update(UpdateEvent{ev.kind, WeightedEdge(k, 1), ev.seq});
    if (ev.kind == UpdateKind::erase) matching_.remove(ev.edge.key());
    ++c_;
    if (Rational(c_) * W_ >= eps_ * w_star_) {
        rebuild();
    }
    if (!(Rational(c_) * W_ < eps_ * w_star_) && c_ != 0) cadence_ok_ = false;
    return diff(before, matching_);
}

}  // namespace dynmwm

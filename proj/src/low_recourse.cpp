#include "dynmwm/low_recourse.hpp"

#include "dynmwm/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace dynmwm {

namespace {

std::size_t spacing(const Rational& eps) { return static_cast<std::size_t>(ceil_div(Rational(2) / eps)); }

}  // namespace

Rational low_recourse_recourse_cap(const Rational& eps, const Rational& max_weight) {
    long lg = std::max(1L, ceil_log(max_weight, Rational(2)));
    return Rational(kLowRecourseC * lg * lg) / eps;
}

Rational low_recourse_ratio_floor(const Rational& eps, const Rational& max_weight) {
    long lg = std::max(1L, ceil_log(max_weight, Rational(2)));
    return 1 - low_recourse_ratio_constant() * eps * lg;
}

Matching lr_direct_transform(const Matching& tilde_i, const Matching& m_j, const std::set<EdgeKey>& updated,
                             const Rational& eps, TransformStats* stats) {
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("transform needs 0 < eps < 1");
    const std::size_t c2 = spacing(eps);
    Matching out;
    for (const auto& [k, w] : tilde_i.edges())
        if (m_j.contains(k)) out.add(k, m_j.weight_of(k));
    TransformStats local;
    for (const auto& comp : symmetric_difference_components(tilde_i, m_j)) {
        ++local.components;
        const auto& es = comp.edges;
        const std::size_t n = es.size();
        std::vector<bool> upd(n), cut(n);
        for (std::size_t i = 0; i < n; ++i) upd[i] = updated.count(es[i].edge.key()) != 0;
        auto step = [&](std::size_t i, int dir, std::size_t s) -> std::size_t {
            if (comp.cycle) return dir > 0 ? (i + s) % n : (i + n - s % n) % n;
            return dir > 0 ? i + s : i - s;
        };
        for (std::size_t i = 0; i < n; ++i) {
            if (!upd[i]) continue;
            for (int dir : {1, -1}) {
                std::size_t avail = comp.cycle ? n - 1 : (dir > 0 ? n - 1 - i : i);
                if (avail < c2) continue;
                bool clean = true;
                std::optional<std::size_t> best;
                for (std::size_t s = 1; s <= c2; ++s) {
                    std::size_t j = step(i, dir, s);
                    if (upd[j]) clean = false;
                    if (!es[j].from_a && (!best || es[j].edge.w < es[*best].edge.w)) best = j;
                }
                if (clean && best && !cut[*best]) {
                    cut[*best] = true;
                    ++local.dropped;
                }
            }
        }
        // Pieces between cut edges; on a cycle without cuts the whole cycle is one piece.
        std::vector<std::vector<std::size_t>> pieces;
        std::size_t start = 0;
        if (comp.cycle) {
            auto first = std::find(cut.begin(), cut.end(), true);
            start = first == cut.end() ? 0 : static_cast<std::size_t>(first - cut.begin()) + 1;
        }
        std::vector<std::size_t> cur;
        for (std::size_t s = 0; s < n; ++s) {
            std::size_t i = (start + s) % n;
            if (cut[i]) {
                if (!cur.empty()) pieces.push_back(std::move(cur));
                cur.clear();
                continue;
            }
            cur.push_back(i);
        }
        if (!cur.empty()) pieces.push_back(std::move(cur));
        for (const auto& piece : pieces) {
            bool dirty = std::any_of(piece.begin(), piece.end(), [&](std::size_t i) { return upd[i]; });
            if (dirty) ++local.switched;
            for (std::size_t i : piece)
                if (es[i].from_a != dirty) out.add(es[i].edge);
        }
    }
    if (stats) *stats = local;
    return out;
}

TransformationForest::TransformationForest(Rational eps, Rational max_weight) : eps_(std::move(eps)) {
    if (!(eps_ > 0 && eps_ < 1)) throw std::invalid_argument("forest needs 0 < eps < 1");
    if (max_weight < 1) throw std::invalid_argument("forest needs max_weight >= 1");
    Rational q = (1 - eps_) * (1 - eps_);
    theta_ = std::max(1L, ceil_log(max_weight / q, Rational(2)));
}

long TransformationForest::bucket_of(const Rational& w) {
    if (w < 0) throw std::invalid_argument("negative matching weight");
    if (w == 0) return kNoBucket;
    return floor_log(w, Rational(2));
}

std::size_t TransformationForest::push(const Rational& weight) {
    Node node;
    node.checkpoint = nodes_.size();
    node.bucket = bucket_of(weight);
    std::size_t idx = nodes_.size();
    if (!cur_) {
        nodes_.push_back(node);
        root_ = cur_ = idx;
        return idx;
    }
    std::size_t cur = *cur_;
    while (nodes_[cur].bucket > node.bucket && cur != *root_) cur = *nodes_[cur].father;
    if (nodes_[cur].bucket > node.bucket) {
        root_ = idx;
    } else {
        node.father = cur;
        node.depth = nodes_[cur].depth + 1;
        nodes_[cur].children.push_back(idx);
    }
    nodes_.push_back(node);
    if (node.father && node.depth == theta_) {
        // A complete root stops the climb; its next child starts a fresh chain.
        while (nodes_[cur].complete && cur != *root_) cur = *nodes_[cur].father;
        nodes_[cur].complete = true;
        cur_ = cur;
    } else {
        cur_ = idx;
    }
    return idx;
}

std::vector<std::size_t> TransformationForest::roots() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (!nodes_[i].father) out.push_back(i);
    return out;
}

long TransformationForest::max_depth() const {
    long d = 0;
    for (const auto& n : nodes_) d = std::max(d, n.depth);
    return d;
}

bool TransformationForest::check_invariants() const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& n = nodes_[i];
        if (n.depth > theta_) return false;
        if (!n.father) {
            if (n.depth != 0) return false;
            continue;
        }
        const Node& f = nodes_[*n.father];
        if (*n.father >= i || f.bucket > n.bucket || n.depth != f.depth + 1) return false;
    }
    return true;
}

LowRecourseSolver::LowRecourseSolver(std::unique_ptr<DynamicSolver> inner, Rational eps, Rational max_weight)
    : inner_(std::move(inner)), eps_(std::move(eps)), max_weight_(std::move(max_weight)), forest_(eps_, max_weight_) {
    if (!inner_) throw std::invalid_argument("low-recourse wrapper needs an inner solver");
    start_phase();
}

void LowRecourseSolver::start_phase() {
    phase_start_ = t_;
    std::size_t nu = mcm_size(inner_->graph());
    std::uint64_t len = std::max<std::uint64_t>(1, floor_div(eps_ * nu).convert_to<std::uint64_t>());
    phase_end_ = t_ + len;
    forest_ = TransformationForest(eps_, max_weight_);
    cp_time_.clear();
    cp_matching_.clear();
    log_.clear();
    cover_.assign(len + 1, 0);
    phase_checkpoints_ = 0;
    ++stats_.phases;
    checkpoint();
}

void LowRecourseSolver::checkpoint() {
    const Matching& mt = inner_->matching();
    std::size_t idx = forest_.push(mt.weight());
    const auto& node = forest_.nodes()[idx];
    Matching next;
    if (!node.father) {
        next = mt;
    } else {
        std::size_t p = *node.father;
        std::uint64_t tp = cp_time_[p];
        std::set<EdgeKey> upd;
        for (const auto& [time, k] : log_)
            if (time > tp && time <= t_) upd.insert(k);
        Matching moved = lr_direct_transform(cp_matching_[p], mt, upd, eps_);
        const DynamicGraph& g = inner_->graph();
        for (const auto& [k, w] : moved.edges()) {
            auto gw = g.find_weight(k);
            if (!gw) throw std::logic_error("transform kept a deleted edge " + to_string(k));
            next.add(k, *gw);
        }
        for (std::uint64_t time = tp + 1; time <= t_; ++time) {
            auto& c = cover_[time - phase_start_];
            stats_.max_cover = std::max<std::uint64_t>(stats_.max_cover, ++c);
        }
    }
    cp_time_.push_back(t_);
    cp_matching_.push_back(next);
    out_ = std::move(next);
    std::uint64_t gap =
        std::max<std::uint64_t>(1, floor_div(eps_ * mt.weight() / max_weight_).convert_to<std::uint64_t>());
    next_checkpoint_ = t_ + gap;
    ++stats_.checkpoints;
    stats_.max_checkpoints_per_phase = std::max(stats_.max_checkpoints_per_phase, ++phase_checkpoints_);
    stats_.max_depth = std::max(stats_.max_depth, node.depth);
    if (!forest_.check_invariants()) ++stats_.forest_violations;
}

MatchingDelta LowRecourseSolver::update(const UpdateEvent& ev) {
    if (ev.edge.w < 1 || ev.edge.w > max_weight_)
        throw UpdateError("weight " + format_rational(ev.edge.w) + " outside [1, W]");
    MatchingDelta inner = inner_->update(ev);
    stats_.inner_recourse += inner.recourse();
    ++stats_.updates;
    ++t_;
    log_.emplace_back(t_, ev.edge.key());
    Matching before = out_;
    if (t_ >= phase_end_) {
        start_phase();
    } else if (t_ >= next_checkpoint_) {
        checkpoint();
    } else if (ev.kind == UpdateKind::erase) {
        out_.remove(ev.edge.key());
    }
    return diff(before, out_);
}

}  // namespace dynmwm

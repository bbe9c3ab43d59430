#include "dynmwm/framework.hpp"

#include "dynmwm/low_degree.hpp"
#include "dynmwm/oracle.hpp"

#include <sstream>
#include <stdexcept>

namespace dynmwm {

InnerFactory oracle_inner(bool churn) {
    return [churn](const InnerSpec&) -> std::unique_ptr<DynamicSolver> {
        return std::make_unique<OracleSolver>(OracleKind::best, churn);
    };
}

void DeltaAccumulator::add(const MatchingDelta& d) {
    for (const auto& e : d.removed) {
        auto it = added_.find(e.key());
        if (it != added_.end()) added_.erase(it);
        else removed_[e.key()] = e.w;
    }
    for (const auto& e : d.added) {
        auto it = removed_.find(e.key());
        if (it != removed_.end() && it->second == e.w) removed_.erase(it);
        else added_[e.key()] = e.w;
    }
}

MatchingDelta DeltaAccumulator::take() {
    MatchingDelta d;
    for (const auto& [k, w] : removed_) d.removed.emplace_back(k, w);
    for (const auto& [k, w] : added_) d.added.emplace_back(k, w);
    removed_.clear();
    added_.clear();
    return d;
}

bool WeightRange::contains(const Rational& w) const {
    Rational r = w / unit;
    return pow_ge(r / lo_factor, base, x) && !pow_ge(r / hi_factor, base, y);
}

Rational WeightRange::scale() const {
    return unit * rational_pow(base, floor_div(x).convert_to<long>()) * lo_factor;
}

std::optional<WeightInterval> WeightRange::interval() const {
    if (denominator(x) != 1 || denominator(y) != 1) return std::nullopt;
    return WeightInterval(unit * lo_factor * rational_pow(base, numerator(x).convert_to<long>()),
                          unit * hi_factor * rational_pow(base, numerator(y).convert_to<long>()));
}

std::string WeightRange::describe() const {
    std::ostringstream os;
    os << "[" << format_rational(lo_factor) << "*" << format_rational(base) << "^" << format_rational(x) << ", "
       << format_rational(hi_factor) << "*" << format_rational(base) << "^" << format_rational(y) << ")";
    return os.str();
}

MatchingDelta UnionMerger::apply(const std::vector<MatchingDelta>& child_deltas) {
    std::map<EdgeKey, std::pair<Rational, int>> change;
    for (const auto& d : child_deltas) {
        for (const auto& e : d.removed) {
            auto& c = change[e.key()];
            c.first = e.w;
            --c.second;
        }
        for (const auto& e : d.added) {
            auto& c = change[e.key()];
            c.first = e.w;
            ++c.second;
        }
    }
    std::vector<WeightedEdge> erase, insert;
    for (const auto& [k, c] : change) {
        if (c.second == 0) continue;
        auto it = count_.find(k);
        int before = it == count_.end() ? 0 : it->second.second;
        int after = before + c.second;
        if (after < 0) throw std::logic_error("union merger refcount underflow at " + to_string(k));
        if (before > 0 && after == 0) erase.emplace_back(k, it->second.first);
        if (before == 0 && after > 0) insert.emplace_back(k, c.first);
        if (after == 0) count_.erase(k);
        else count_[k] = {c.first, after};
    }
    DeltaAccumulator acc;
    for (const auto& e : erase) {
        ++events_;
        acc.add(solver_->update(UpdateEvent{UpdateKind::erase, e, 0}));
    }
    for (const auto& e : insert) {
        ++events_;
        acc.add(solver_->update(UpdateEvent{UpdateKind::insert, e, 0}));
    }
    return acc.take();
}

Rational standard_constant(const Rational& eps) {
    long g = ceil_log(Rational(1) / (eps * eps * eps), Rational(1) / (eps * eps * eps)) + 1;
    return Rational(7 * g) + 8 * (1 + 4 * eps) + 2;
}

Rational tree_constant(const Rational& eps, int d) {
    return rational_pow(Rational(kTreeSplitConstant + 1), d) * standard_constant(eps);
}

Rational ultimate_constant(const Rational& eps) {
    long g = ceil_log(Rational(1) / (eps * eps * eps), Rational(2)) + 1;
    return Rational(7 * g) + 8 * (1 + 4 * eps) + tree_constant(eps, 3);
}

struct FrameworkSolver::Leaf {
    std::size_t id = 0;
    WeightRange range;
    Rational scale;
    std::unique_ptr<DynamicSolver> inner;
    DynamicGraph cls;
    Matching out;
};

struct FrameworkSolver::Node {
    WeightRange range;
    std::unique_ptr<Leaf> leaf;
    std::unique_ptr<Node> left, right;
    std::unique_ptr<UnionMerger> merger;

    const Matching& out() const { return leaf ? leaf->out : merger->matching(); }
};

FrameworkSolver::FrameworkSolver(FrameworkConfig cfg) : cfg_(std::move(cfg)) {
    if (!(cfg_.eps > 0 && cfg_.eps <= Rational(1, 6))) throw std::invalid_argument("framework needs 0 < eps <= 1/6");
    if (!(cfg_.weight_unit > 0 && cfg_.weight_unit <= cfg_.max_weight))
        throw std::invalid_argument("framework needs 0 < weight_unit <= max_weight");
    if (cfg_.depth < 0) throw std::invalid_argument("tree depth must be non-negative");
    if (!cfg_.inner) cfg_.inner = oracle_inner();
    if (cfg_.mode == FrameworkMode::standard) cfg_.depth = 0;
    build();
}

FrameworkSolver::~FrameworkSolver() = default;

std::string FrameworkSolver::name() const {
    switch (cfg_.mode) {
        case FrameworkMode::standard:
            return "framework/standard";
        case FrameworkMode::tree:
            return "framework/tree(" + std::to_string(cfg_.depth) + ")";
        case FrameworkMode::ultimate:
            return "framework/ultimate";
    }
    return "framework";
}

std::unique_ptr<FrameworkSolver::Node> FrameworkSolver::make_node(const WeightRange& r, int depth_left) {
    auto n = std::make_unique<Node>();
    n->range = r;
    if (depth_left == 0) {
        auto leaf = std::make_unique<Leaf>();
        leaf->range = r;
        leaf->scale = r.scale();
        Rational top = rational_pow(r.base, ceil_div(r.y).convert_to<long>() - floor_div(r.x).convert_to<long>()) *
                       r.hi_factor / r.lo_factor;
        leaf->inner = cfg_.inner(InnerSpec{cfg_.eps, top, cfg_.max_degree});
        n->leaf = std::move(leaf);
        return n;
    }
    Rational mid = (r.x + r.y) / 2;
    WeightRange a = r, b = r;
    a.y = mid + 1;
    b.x = mid - 1;
    n->left = make_node(a, depth_left - 1);
    n->right = make_node(b, depth_left - 1);
    n->merger = std::make_unique<UnionMerger>(std::make_unique<DegreeTwoSolver>(cfg_.eps));
    return n;
}

void FrameworkSolver::collect_leaves(const Node& n, std::vector<const Leaf*>& out) const {
    if (n.leaf) {
        out.push_back(n.leaf.get());
        return;
    }
    collect_leaves(*n.left, out);
    collect_leaves(*n.right, out);
}

void FrameworkSolver::build() {
    const Rational& eps = cfg_.eps;
    if (cfg_.mode == FrameworkMode::ultimate) {
        base_ = 2;
        L_ = floor_log(cfg_.max_weight / cfg_.weight_unit, base_);
        long g = ceil_log(Rational(1) / (eps * eps * eps), Rational(2)) + 1;
        std::vector<std::vector<WeightInterval>> per_residue(static_cast<std::size_t>(g));
        for (long t = 0; t <= L_; ++t) {
            WeightRange r;
            r.base = 2;
            r.unit = cfg_.weight_unit;
            r.x = t;
            r.y = t + 1;
            r.lo_factor = eps;
            r.hi_factor = 1 / eps;
            roots_.push_back(make_node(r, 0));
            std::size_t res = static_cast<std::size_t>(t % g);
            per_residue[res].push_back(*r.interval());
            census_slot_.emplace_back(res, per_residue[res].size());
        }
        for (auto& iv : per_residue) census_.push_back(std::make_unique<Census>(iv.size(), iv));
        merger_ = std::make_unique<UnionMerger>(
            make_low_degree_solver(eps, static_cast<std::size_t>(g), cfg_.weight_unit, cfg_.max_weight));
    } else {
        base_ = 1 / eps;
        L_ = floor_log(cfg_.max_weight / cfg_.weight_unit, base_);
        long K = (L_ + 1 + 2) / 3;
        std::vector<std::vector<WeightInterval>> per_parity(2);
        for (long i = 1; i <= K; ++i) {
            WeightRange r;
            r.base = base_;
            r.unit = cfg_.weight_unit;
            r.x = 3 * i - 4;
            r.y = 3 * i + 1;
            roots_.push_back(make_node(r, cfg_.depth));
            std::size_t parity = i % 2 == 1 ? 0 : 1;
            per_parity[parity].push_back(*r.interval());
            census_slot_.emplace_back(parity, per_parity[parity].size());
        }
        for (auto& iv : per_parity) census_.push_back(std::make_unique<Census>(iv.size(), iv));
        merger_ = std::make_unique<UnionMerger>(std::make_unique<DegreeTwoSolver>(eps));
    }
    std::vector<const Leaf*> leaves;
    for (const auto& root : roots_) collect_leaves(*root, leaves);
    for (std::size_t i = 0; i < leaves.size(); ++i) const_cast<Leaf*>(leaves[i])->id = i;
}

const Matching& FrameworkSolver::matching() const { return merger_->matching(); }

std::size_t FrameworkSolver::class_count() const { return roots_.size(); }

std::size_t FrameworkSolver::leaf_count() const {
    std::vector<const Leaf*> leaves;
    for (const auto& root : roots_) collect_leaves(*root, leaves);
    return leaves.size();
}

std::vector<WeightRange> FrameworkSolver::leaf_ranges() const {
    std::vector<const Leaf*> leaves;
    for (const auto& root : roots_) collect_leaves(*root, leaves);
    std::vector<WeightRange> out;
    for (const auto* l : leaves) out.push_back(l->range);
    return out;
}

std::vector<std::size_t> FrameworkSolver::expected_leaves(const Rational& w) const {
    std::vector<std::size_t> out;
    if (cfg_.mode == FrameworkMode::standard) {
        long j = floor_log(w / cfg_.weight_unit, base_);
        long K = static_cast<long>(roots_.size());
        for (long i = 1; i <= K; ++i)
            if (3 * i - 4 <= j && j <= 3 * i) out.push_back(static_cast<std::size_t>(i - 1));
        return out;
    }
    auto ranges = leaf_ranges();
    for (std::size_t i = 0; i < ranges.size(); ++i)
        if (ranges[i].contains(w)) out.push_back(i);
    return out;
}

std::vector<std::size_t> FrameworkSolver::leaves_holding(const EdgeKey& k) const {
    std::vector<const Leaf*> leaves;
    for (const auto& root : roots_) collect_leaves(*root, leaves);
    std::vector<std::size_t> out;
    for (const auto* l : leaves)
        if (l->cls.has_edge(k)) out.push_back(l->id);
    return out;
}

std::vector<Matching> FrameworkSolver::class_matchings() const {
    std::vector<Matching> out;
    for (const auto& r : roots_) out.push_back(r->out());
    return out;
}

MatchingDelta FrameworkSolver::route(Node& n, const UpdateEvent& ev) {
    if (!n.range.contains(ev.edge.w)) return {};
    if (n.leaf) {
        Leaf& leaf = *n.leaf;
        apply_update(leaf.cls, ev);
        if (ev.kind == UpdateKind::insert) ++stats_.inner_inserts;
        else ++stats_.inner_erases;
        UpdateEvent scaled = ev;
        scaled.edge.w = ev.edge.w / leaf.scale;
        MatchingDelta inner = leaf.inner->update(scaled);
        stats_.inner_recourse += inner.recourse();
        MatchingDelta real;
        for (const auto& e : inner.removed) {
            real.removed.emplace_back(e.key(), leaf.out.weight_of(e.key()));
            leaf.out.remove(e.key());
        }
        for (const auto& e : inner.added) {
            WeightedEdge re(e.key(), leaf.cls.weight(e.key()));
            leaf.out.add(re);
            real.added.push_back(re);
        }
        return real;
    }
    MatchingDelta a = route(*n.left, ev);
    MatchingDelta b = route(*n.right, ev);
    return n.merger->apply({a, b});
}

MatchingDelta FrameworkSolver::update(const UpdateEvent& ev) {
    const Rational& w = ev.edge.w;
    if (w < cfg_.weight_unit || w > cfg_.max_weight)
        throw UpdateError("weight " + format_rational(w) + " outside the configured range");
    apply_update(graph_, ev);
    std::vector<MatchingDelta> root_deltas;
    for (auto& root : roots_) root_deltas.push_back(route(*root, ev));
    std::vector<DeltaAccumulator> acc(census_.size());
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        auto [c, slot] = census_slot_[i];
        for (const auto& e : root_deltas[i].removed) acc[c].add(census_[c]->erase(slot, e.key()));
    }
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        auto [c, slot] = census_slot_[i];
        for (const auto& e : root_deltas[i].added) acc[c].add(census_[c]->insert(slot, e));
    }
    std::vector<MatchingDelta> census_deltas;
    for (std::size_t c = 0; c < census_.size(); ++c) {
        census_deltas.push_back(acc[c].take());
        stats_.census_recourse += census_deltas.back().recourse();
        if (!census_[c]->characterization_holds()) ++stats_.census_violations;
    }
    std::uint64_t before = merger_->events();
    MatchingDelta out = merger_->apply(census_deltas);
    stats_.merger_events += merger_->events() - before;
    return out;
}

}  // namespace dynmwm

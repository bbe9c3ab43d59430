#include "dynmwm/composer.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dynmwm {

namespace {

// First edge of side `from_a` satisfying pred, walking from position p in direction dir.
// Cycles wrap around but never revisit p.
template <class Pred>
std::optional<std::size_t> scan(const AltComponent& c, std::size_t p, int dir, Pred pred) {
    std::size_t n = c.edges.size();
    for (std::size_t step = 1; step < n; ++step) {
        long q = static_cast<long>(p) + dir * static_cast<long>(step);
        if (!c.cycle && (q < 0 || q >= static_cast<long>(n))) break;
        std::size_t idx = static_cast<std::size_t>(((q % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n));
        const auto& e = c.edges[idx];
        if (e.from_a && pred(e.edge.w)) return idx;
    }
    return std::nullopt;
}

void validate_plan(const DynamicGraph& g, const SubstitutionPlan& plan) {
    if (!(plan.eps > 0 && plan.eps <= Rational(1, 2))) throw std::invalid_argument("substitution needs 0 < eps <= 1/2");
    if (!is_subgraph_matching(plan.source, g)) throw std::invalid_argument("source matching is not in the graph");
    for (std::size_t i = 0; i < plan.targets.size(); ++i) {
        const auto& t = plan.targets[i];
        if (i + 1 < plan.targets.size() && plan.targets[i + 1].interval.lo < t.interval.hi / plan.eps)
            throw std::invalid_argument("substitution intervals are not (1/eps)-spread");
        WeightInterval pad = t.interval.padded(plan.eps);
        if (!is_subgraph_matching(t.target, g)) throw std::invalid_argument("target matching is not in the graph");
        for (const auto& [k, w] : t.target.edges())
            if (!pad.contains(w))
                throw std::invalid_argument("target edge " + to_string(k) + " lies outside its padded class");
    }
}

}  // namespace

CompositionCertificate substitute(const DynamicGraph& g, const SubstitutionPlan& plan, const OracleBudget& budget) {
    validate_plan(g, plan);
    const Rational& eps = plan.eps;
    CompositionCertificate cert;
    cert.source_weight = plan.source.weight();
    Matching m = plan.source;
    for (const auto& [interval, target] : plan.targets) {
        const Rational& lo = interval.lo;
        const Rational& hi = interval.hi;
        WeightInterval pad = interval.padded(eps);

        std::set<EdgeKey> doomed;
        for (const auto& comp : symmetric_difference_components(m, target)) {
            for (std::size_t p = 0; p < comp.edges.size(); ++p) {
                const auto& e = comp.edges[p];
                if (!e.from_a) continue;
                std::optional<std::size_t> hits[2];
                if (e.edge.w >= hi / eps) {
                    for (int d = 0; d < 2; ++d)
                        hits[d] = scan(comp, p, d ? 1 : -1, [&](const Rational& w) { return w <= hi; });
                } else if (e.edge.w >= lo) {
                    for (int d = 0; d < 2; ++d)
                        hits[d] = scan(comp, p, d ? 1 : -1, [&](const Rational& w) { return w < eps * lo; });
                }
                for (const auto& h : hits)
                    if (h) doomed.insert(comp.edges[*h].edge.key());
            }
        }
        for (const auto& k : doomed) {
            cert.deleted_weight += m.weight_of(k);
            m.remove(k);
        }

        for (const auto& comp : symmetric_difference_components(m, target)) {
            bool in_class = false;
            for (const auto& e : comp.edges)
                if (e.from_a && interval.contains(e.edge.w)) in_class = true;
            if (!in_class) continue;
            for (const auto& e : comp.edges)
                if (!pad.contains(e.edge.w)) ++cert.confinement_violations;
            for (const auto& e : comp.edges) {
                if (e.from_a) {
                    cert.substitution_loss += e.edge.w;
                    m.remove(e.edge.key());
                }
            }
            for (const auto& e : comp.edges) {
                if (!e.from_a) {
                    cert.substitution_loss -= e.edge.w;
                    m.add(e.edge);
                }
            }
        }
        cert.padded_deficit += mwm_value(restrict(g, pad), budget) - target.weight();
    }
    cert.result = std::move(m);
    cert.bound = (1 - 4 * eps) * cert.source_weight - cert.padded_deficit;
    return cert;
}

long composition_phases(const Rational& eps, const Rational& delta) {
    return ceil_log(Rational(1) / (eps * eps * eps), delta) + 1;
}

CompositionCertificate compose(const DynamicGraph& g, const std::vector<Matching>& class_matchings,
                               const WeightPartition& partition, const Rational& eps, const OracleBudget& budget) {
    if (!(eps > 0 && eps <= Rational(1, 6))) throw std::invalid_argument("composition needs 0 < eps <= 1/6");
    if (class_matchings.size() != partition.size())
        throw std::invalid_argument("one matching per partition class is required");
    if (!partition.is_wide(partition.delta)) throw std::invalid_argument("partition is not delta-wide");
    for (const auto& [k, w] : g.edges()) {
        bool covered = false;
        for (const auto& I : partition.intervals) covered = covered || I.contains(w);
        if (!covered) throw std::invalid_argument("edge " + to_string(k) + " lies in no half-open class");
    }
    for (std::size_t i = 0; i < partition.size(); ++i) {
        DynamicGraph cls = restrict(g, partition.intervals[i].padded(eps));
        if (!is_subgraph_matching(class_matchings[i], cls))
            throw std::invalid_argument("class matching " + std::to_string(i) + " leaves its padded class");
        if (class_matchings[i].weight() < (1 - eps) * mwm_value(cls, budget))
            throw std::invalid_argument("class matching " + std::to_string(i) + " is not (1-eps)-approximate");
    }
    long phases = composition_phases(eps, partition.delta);
    Rational mu = mwm_value(g, budget);
    CompositionCertificate total;
    total.phases = static_cast<std::size_t>(phases);
    total.source_weight = mu;
    Matching s = mwm_best_exact(g, budget);
    for (long j = 0; j < phases; ++j) {
        SubstitutionPlan plan;
        plan.source = s;
        plan.eps = eps;
        for (std::size_t i = static_cast<std::size_t>(j); i < partition.size(); i += static_cast<std::size_t>(phases))
            plan.targets.push_back(SubstitutionTarget{partition.intervals[i], class_matchings[i]});
        CompositionCertificate step = substitute(g, plan, budget);
        total.deleted_weight += step.deleted_weight;
        total.substitution_loss += step.substitution_loss;
        total.padded_deficit += step.padded_deficit;
        total.confinement_violations += step.confinement_violations;
        s = step.result;
    }
    total.result = std::move(s);
    total.bound = (1 - 7 * phases * eps) * mu;
    return total;
}

DynamicGraph union_graph(const std::vector<Matching>& ms) {
    DynamicGraph u;
    for (const auto& m : ms)
        for (const auto& [k, w] : m.edges()) {
            if (auto old = u.find_weight(k)) {
                if (*old != w) throw std::invalid_argument("edge " + to_string(k) + " carries two weights");
                continue;
            }
            u.insert_edge(k.u, k.v, w);
        }
    return u;
}

Matching compose_production(const std::vector<Matching>& class_matchings, const Rational& eps) {
    return approx_mwm_static(union_graph(class_matchings), eps);
}

Matching greedy_combine(const std::vector<Matching>& ms, const std::vector<WeightInterval>& intervals,
                        const Rational& eps) {
    if (!(eps > 0 && eps <= Rational(1, 6))) throw std::invalid_argument("greedy combination needs 0 < eps <= 1/6");
    for (std::size_t i = 0; i + 1 < intervals.size(); ++i)
        if (intervals[i + 1].lo < intervals[i].hi / eps)
            throw std::invalid_argument("combination intervals are not (1/eps)-spread");
    std::vector<WeightedEdge> pool;
    for (const auto& m : ms)
        for (const auto& e : m.edge_list()) pool.push_back(e);
    std::stable_sort(pool.begin(), pool.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.w != b.w ? a.w > b.w : a.key() < b.key();
    });
    Matching out;
    for (const auto& e : pool)
        if (out.can_add(e.key())) out.add(e);
    return out;
}

CombinationCertificate certify_weight_combination(const DynamicGraph& g, const std::vector<WeightInterval>& intervals,
                                                  const Rational& eps, const OracleBudget& budget) {
    CombinationCertificate c;
    for (const auto& I : intervals) c.class_sum += mwm_value(restrict(g, I), budget);
    c.mu = mwm_value(g, budget);
    c.bound = (1 + 4 * eps) * c.mu;
    return c;
}

}  // namespace dynmwm

#include "dynmwm/adversarial.hpp"

#include "dynmwm/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>

namespace dynmwm {

namespace {

Rational gadget_value(const std::vector<WeightedEdge>& edges) {
    if (edges.empty()) return 0;
    return mwm_best_exact(graph_from_edges(edges)).weight();
}

std::vector<WeightedEdge> gadget_edges(const Gadget& g) { return {g.a, g.b, g.c}; }

const Rational kThreeHalves(3, 2);

}  // namespace

Rational GadgetInstance::mu() const {
    Rational s = 0;
    for (const auto& g : gadgets) s += gadget_value(gadget_edges(g));
    return s;
}

Gadget make_gadget(long level, const Rational& beta, Vertex first) {
    Gadget g;
    g.level = level;
    for (Vertex i = 0; i < 4; ++i) g.path[i] = first + i;
    Rational lo = rational_pow(beta, level);
    g.a = WeightedEdge(first, first + 1, lo);
    g.b = WeightedEdge(first + 1, first + 2, lo);
    g.c = WeightedEdge(first + 2, first + 3, lo * beta);
    return g;
}

Rational gadget_mwm(long level, const Rational& beta) { return rational_pow(beta, level) * (1 + beta); }

long round_nearest(const Rational& x) { return floor_div(x + Rational(1, 2)).convert_to<long>(); }

namespace {

GadgetInstance build(const Rational& beta, long N, long lo, long hi, const std::vector<long>& counts) {
    GadgetInstance inst;
    inst.beta = beta;
    inst.N = N;
    inst.min_level = lo;
    inst.max_level = hi;
    inst.counts = counts;
    Vertex next = 0;
    for (long level = lo; level <= hi; ++level)
        for (long c = 0; c < inst.count(level); ++c) {
            inst.gadgets.push_back(make_gadget(level, beta, next));
            next += 4;
        }
    inst.graph = DynamicGraph(next);
    for (const auto& g : inst.gadgets)
        for (const auto& e : gadget_edges(g)) inst.graph.insert_edge(e);
    return inst;
}

}  // namespace

GadgetInstance gen_partition_counterexample(long N) {
    if (N < 1) throw std::invalid_argument("N must be at least 1");
    std::vector<long> counts;
    for (long i = 0; i <= N; ++i) counts.push_back(round_nearest(rational_pow(kThreeHalves, N - i)));
    return build(kThreeHalves, N, 0, N, counts);
}

Rational alpha_beta(const Rational& alpha) {
    if (!(alpha > Rational(1, 2) && alpha < 1)) throw std::invalid_argument("alpha must lie in (1/2, 1)");
    return alpha / (1 - alpha);
}

long alpha_level_count(const Rational& alpha, const Rational& delta) {
    if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
    Rational gap = alpha - alpha * alpha - (1 - alpha) * (1 - alpha);
    return floor_div(gap / delta - 1).convert_to<long>();
}

GadgetInstance gen_alpha_counterexample(const Rational& alpha, long N, long multiplier) {
    Rational beta = alpha_beta(alpha);
    if (N < 2) throw std::invalid_argument("N must be at least 2");
    if (multiplier < 1) throw std::invalid_argument("multiplier must be positive");
    std::vector<long> counts;
    for (long i = 0; i <= N - 1; ++i) counts.push_back(multiplier * round_nearest(rational_pow(beta, N - i)));
    GadgetInstance inst = build(beta, N, 0, N - 1, counts);
    long keep_c = round_nearest(alpha * inst.count(N - 1));
    long seen_top = 0;
    for (const auto& g : inst.gadgets) {
        if (g.level <= N - 2) {
            inst.sparsifier.insert(g.b.key());
            inst.sparsifier.insert(g.c.key());
        } else {
            inst.sparsifier.insert(g.b.key());
            if (seen_top++ < keep_c) inst.sparsifier.insert(g.c.key());
        }
    }
    return inst;
}

bool is_disjoint_three_paths(const GadgetInstance& inst) {
    std::set<Vertex> used;
    std::set<EdgeKey> listed;
    for (const auto& g : inst.gadgets) {
        for (Vertex v : g.path)
            if (!used.insert(v).second) return false;
        if (g.a.key() != make_key(g.path[0], g.path[1]) || g.b.key() != make_key(g.path[1], g.path[2]) ||
            g.c.key() != make_key(g.path[2], g.path[3]))
            return false;
        for (const auto& e : gadget_edges(g)) {
            auto w = inst.graph.find_weight(e.key());
            if (!w || *w != e.w) return false;
            listed.insert(e.key());
        }
        for (Vertex v : g.path)
            for (Vertex y : inst.graph.neighbors(v))
                if (!listed.count(make_key(v, y)) && std::find(g.path.begin(), g.path.end(), y) == g.path.end())
                    return false;
    }
    return listed.size() == inst.graph.edge_count();
}

Rational adversarial_union_value(const Gadget& g, const std::vector<WeightInterval>& classes) {
    std::vector<std::vector<Matching>> choices;
    for (const auto& cls : classes) {
        std::vector<WeightedEdge> inside;
        for (const auto& e : gadget_edges(g))
            if (cls.contains(e.w)) inside.push_back(e);
        if (inside.empty()) continue;
        choices.push_back(enumerate_approx_mwms(graph_from_edges(inside), 0));
    }
    std::optional<Rational> best;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        std::map<EdgeKey, Rational> uni;
        for (std::size_t i = 0; i < choices.size(); ++i)
            for (const auto& [k, w] : choices[i][pick[i]].edges()) uni[k] = w;
        std::vector<WeightedEdge> es;
        for (const auto& [k, w] : uni) es.emplace_back(k, w);
        Rational v = gadget_value(es);
        if (!best || v < *best) best = v;
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return *best;
}

namespace {

Rational cap_exponent(long N, const Rational& delta) { return Rational(N) / (Rational(5, 2) * delta * N + 1); }

}  // namespace

PartitionVerdict certify_partition_loss(const GadgetInstance& inst, const std::vector<WeightInterval>& partition,
                                        const Rational& delta) {
    if (partition.empty()) throw std::invalid_argument("empty partition");
    for (std::size_t i = 0; i + 1 < partition.size(); ++i)
        if (partition[i].hi != partition[i + 1].lo) throw std::invalid_argument("partition is not contiguous");
    for (const auto& [k, w] : inst.graph.edges()) {
        bool covered = false;
        for (const auto& c : partition) covered = covered || c.contains(w);
        if (!covered) throw std::invalid_argument("partition misses weight " + format_rational(w));
    }
    PartitionVerdict v;
    v.mu = inst.mu();
    v.loss = 0;
    std::map<long, Rational> per_level;
    for (const auto& g : inst.gadgets) {
        auto it = per_level.find(g.level);
        if (it == per_level.end())
            it = per_level.emplace(g.level, gadget_value(gadget_edges(g)) - adversarial_union_value(g, partition)).first;
        v.loss += it->second;
    }
    for (const auto& [level, loss] : per_level)
        if (loss > 0) v.broken_levels.push_back(level);
    Rational top = rational_pow(inst.beta, inst.max_level + 1);
    Rational bottom = rational_pow(inst.beta, inst.min_level);
    for (std::size_t i = 0; i + 1 < partition.size(); ++i) {
        const Rational& r = partition[i].hi;
        if (r <= bottom || r > top) continue;
        v.predicted_levels.push_back(ceil_log(r, inst.beta) - 1);
    }
    v.threshold = delta * v.mu;
    v.exceeds = v.loss > v.threshold;
    v.max_width = 0;
    for (const auto& c : partition) v.max_width = std::max(v.max_width, c.width());
    v.cap_exponent = cap_exponent(inst.N, delta);
    v.width_ok = v.exceeds || pow_ge(v.max_width, inst.beta, v.cap_exponent);
    return v;
}

ExhaustiveVerdict certify_all_narrow_partitions(const GadgetInstance& inst, const Rational& delta) {
    const long N = inst.N;
    if (inst.min_level != 0 || inst.max_level != N) throw std::invalid_argument("expects a partition instance");
    ExhaustiveVerdict out;
    out.delta = delta;
    out.cap_exponent = cap_exponent(N, delta);
    out.threshold = delta * inst.mu();

    // Loss of each level when its gap is separated, found by the enumeration driver.
    std::vector<Rational> level_loss;
    for (long j = 0; j <= N; ++j) {
        Gadget g = make_gadget(j, inst.beta, 0);
        Rational lo = rational_pow(inst.beta, j);
        WeightInterval whole(lo, lo * inst.beta * inst.beta);
        if (adversarial_union_value(g, {whole}) != gadget_mwm(j, inst.beta))
            throw std::logic_error("unbroken gadget lost weight");
        Rational split = adversarial_union_value(g, {WeightInterval(lo, lo * inst.beta),
                                                     WeightInterval(lo * inst.beta, lo * inst.beta * inst.beta)});
        level_loss.push_back(inst.count(j) * (gadget_mwm(j, inst.beta) - split));
    }
    BigInt D = 1;
    for (const auto& l : level_loss) D = boost::multiprecision::lcm(D, denominator(l));
    const BigInt cap = BigInt(1) << 60;
    std::vector<std::int64_t> L;
    BigInt total = 0;
    for (const auto& l : level_loss) {
        BigInt s = numerator(l) * (D / denominator(l));
        total += s;
        L.push_back(s.convert_to<std::int64_t>());
    }
    if (total >= cap) throw std::overflow_error("scaled losses do not fit 64 bits");
    const std::int64_t T = floor_div(out.threshold * Rational(D)).convert_to<std::int64_t>();
    const std::int64_t p = numerator(out.cap_exponent).convert_to<std::int64_t>();
    const std::int64_t q = denominator(out.cap_exponent).convert_to<std::int64_t>();

    // z is one plus the exponent of the last class boundary, in units of 1/q.
    std::optional<std::int64_t> min_loss;
    const long last = N + 1;
    std::function<void(long, std::int64_t, std::int64_t)> rec = [&](long t, std::int64_t z, std::int64_t loss) {
        for (long e = t; e <= last; ++e) {
            if (z + p <= (e + 1) * q) break;
            std::int64_t z2 = std::min<std::int64_t>((e + 2) * q, z + p);
            if (e == last) {
                ++out.feasible;
                if (loss <= T) ++out.violations;
                if (!min_loss || loss < *min_loss) min_loss = loss;
            } else {
                rec(e + 1, z2, loss + L[static_cast<std::size_t>(e)]);
            }
        }
    };
    rec(0, q, 0);
    out.shapes = std::uint64_t(1) << (N + 1);
    out.min_loss = min_loss ? Rational(*min_loss) / Rational(D) : Rational(0);
    return out;
}

AlphaVerdict certify_alpha_counterexample(const GadgetInstance& inst, const Rational& alpha, const Rational& delta) {
    AlphaVerdict v;
    v.alpha = alpha;
    v.delta = delta;
    v.mu_g = inst.mu();
    v.mu_s = 0;
    auto in_s = [&](const WeightedEdge& e) { return inst.sparsifier.count(e.key()) != 0; };
    for (const auto& g : inst.gadgets) {
        std::vector<WeightedEdge> s;
        for (const auto& e : gadget_edges(g))
            if (in_s(e)) s.push_back(e);
        v.mu_s += gadget_value(s);
    }
    v.ratio = v.mu_s / v.mu_g;
    Rational gap = alpha - alpha * alpha - (1 - alpha) * (1 - alpha);
    v.formula_ratio = alpha - gap / inst.N;
    v.ratio_matches = v.ratio == v.formula_ratio;
    v.ratio_below = v.formula_ratio < alpha - delta;
    const long top = inst.max_level + 1;
    for (long a = inst.min_level; a <= top; ++a)
        for (long b = a + 1; b <= top + 1; ++b) {
            if (a == inst.min_level && b == top + 1) continue;
            WeightInterval cls(rational_pow(inst.beta, a), rational_pow(inst.beta, b));
            Rational mu_cls = 0, mu_s_cls = 0;
            for (const auto& g : inst.gadgets) {
                std::vector<WeightedEdge> all, s;
                for (const auto& e : gadget_edges(g)) {
                    if (!cls.contains(e.w)) continue;
                    all.push_back(e);
                    if (in_s(e)) s.push_back(e);
                }
                mu_cls += gadget_value(all);
                mu_s_cls += gadget_value(s);
            }
            ++v.classes_checked;
            if (mu_s_cls < alpha * mu_cls) ++v.class_failures;
        }
    return v;
}

std::vector<UpdateEvent> as_insert_trace(const GadgetInstance& inst) {
    std::vector<UpdateEvent> out;
    std::uint64_t seq = 0;
    for (const auto& g : inst.gadgets)
        for (const auto& e : gadget_edges(g)) out.push_back(make_insert(e.u, e.v, e.w, ++seq));
    return out;
}

}  // namespace dynmwm
